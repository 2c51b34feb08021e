#include "igamcf/projections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igamcf/errors.hpp"
#include "igamcf/linear_solvers.hpp"

namespace igamcf {

SplineField surface_quasi_interp(const QuasiInterpolant& Q, const SplineField& X, const SurfaceFunction& g,
                                 int components, BoundaryMode mode) {
  return apply_quasi_interpolant(
      Q, [&](double u, double v) { return g(X.value(u, v), u, v); }, components, mode);
}

BoundaryData boundary_quasi_interp(const BoundaryTrace& trace, const ParametricBoundary& exact) {
  BoundaryData bd;
  for (Edge e : kEdges) {
    const UnivariateQuasiInterpolant q(trace.edge_space(e));
    const int i = static_cast<int>(e);
    bd.tangent[i] = q.apply([&](double s) -> Eigen::VectorXd { return exact.at(e, s).tangent; }, 3);
    bd.curvature[i] = q.apply([&](double s) -> Eigen::VectorXd { return exact.at(e, s).curvature; }, 3);
  }
  return bd;
}

SplineField project_velocity(const QuasiInterpolant& Q, const SplineField& kappa, const SplineField& nu) {
  return apply_quasi_interpolant(
      Q, [&](double u, double v) -> Eigen::VectorXd { return -kappa.value(u, v)[0] * nu.value(u, v); }, 3,
      BoundaryMode::zero);
}

Eigen::MatrixXd source_h1_load(const TensorSplineSpace& space, const ParametricSurface& src,
                               const ParametricField& u, double mass_weight, int points) {
  const ParametricMesh mesh(space.num_elements(), points);
  const ElementBasis basis(space, mesh);
  const int ne = mesh.num_elements();
  const int nq = mesh.points();
  const int D = u.components;
  Eigen::MatrixXd load = Eigen::MatrixXd::Zero(space.dim(), D);
  Eigen::VectorXd val, du, dv;
  for (int e2 = 0; e2 < ne; ++e2)
    for (int e1 = 0; e1 < ne; ++e1) {
      const std::vector<int> dofs = space.element_dofs(e1, e2);
      for (int q2 = 0; q2 < nq; ++q2)
        for (int q1 = 0; q1 < nq; ++q1) {
          const double pu = mesh.node(e1, q1), pv = mesh.node(e2, q2);
          const GeometrySample s = make_sample(src.jacobian(pu, pv), {pu, pv});
          const double w = mesh.weight(q1, q2) * s.area_element;
          basis.evaluate(e1, e2, q1, q2, val, du, dv);
          const Eigen::VectorXd uval = u.value(pu, pv);
          const Eigen::MatrixXd ugrad = surface_gradient(u.gradient(pu, pv), s);  // D x 3
          for (size_t a = 0; a < dofs.size(); ++a) {
            const Eigen::Vector3d gb = surface_gradient(Eigen::Vector2d(du[a], dv[a]), s);
            for (int d = 0; d < D; ++d)
              load(dofs[a], d) += w * (ugrad.row(d).dot(gb) + mass_weight * uval[d] * val[a]);
          }
        }
    }
  return load;
}

SplineField linear_ritz_zero_trace(const SplineField& X, const ParametricSurface& src, const ParametricField& u) {
  const TensorSplineSpace& space = X.space();
  const int p = space.degree();
  // Both sides on the same rule, so members of S_h0 on the same surface are reproduced.
  const MassStiffness ms = assemble_mass_stiffness(X, ParametricMesh(space.num_elements(), p + 2));
  const SpdSolver solver(SparseMatrix(ms.stiffness_zero_trace + ms.mass_zero_trace));
  const Eigen::MatrixXd load = source_h1_load(space, src, u, 1.0, p + 2);
  const auto& interior = space.interior_indices();
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(space.dim(), u.components);
  for (int d = 0; d < u.components; ++d) {
    Eigen::VectorXd rhs(interior.size());
    for (size_t k = 0; k < interior.size(); ++k) rhs[k] = load(interior[k], d);
    const Eigen::VectorXd w = solver.solve(rhs);
    for (size_t k = 0; k < interior.size(); ++k) coeffs(interior[k], d) = w[k];
  }
  return SplineField(X.space_ptr(), std::move(coeffs));
}

namespace {

// int_{dGamma_src} (u . kappa)(u x tau) . b_i, flat 3N layout.
Eigen::VectorXd source_boundary_load(const BoundaryTrace& trace, const ParametricBoundary& src_boundary,
                                     const ParametricField& u, int points) {
  const int n = trace.space().dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * n);
  const GaussRule rule = gauss_legendre(points);
  for (Edge edge : kEdges) {
    const UnivariateSpline& es = trace.edge_space(edge);
    const double h = es.element_size();
    for (int e = 0; e < es.num_elements(); ++e)
      for (int q = 0; q < points; ++q) {
        const double s = (e + rule.nodes[q]) * h;
        const Eigen::MatrixXd B = es.evaluate(e, s, 0);
        const EdgeGeometry g = src_boundary.at(edge, s);
        const Eigen::Vector2d pt = edge_point(edge, s);
        const Eigen::Vector3d uq = u.value(pt.x(), pt.y());
        const Eigen::Vector3d load = uq.dot(g.curvature) * uq.cross(g.tangent) * (rule.weights[q] * h * g.length_element);
        for (int a = 0; a < B.cols(); ++a) {
          const int flat = trace.flat_index(edge, es.first_active(e) + a);
          for (int k = 0; k < 3; ++k) out[k * n + flat] += load[k] * B(0, a);
        }
      }
  }
  return out;
}

}  // namespace

RitzResult nonlinear_ritz_normal(const SplineField& X0, const BoundaryTrace& trace, const SparseMatrix& S,
                                 const BoundaryData& bd, const QuasiInterpolant& Q, const ParametricSurface& src,
                                 const ParametricBoundary& src_boundary, const ParametricField& u,
                                 const RitzConfig& cfg) {
  if (u.components != 3) throw InvalidArgument("Ritz projection of the normal needs a 3-component field");
  if (cfg.lambda <= 0.0 || cfg.lambda_growth <= 1.0 || cfg.fp_max_iter < 1)
    throw InvalidArgument("invalid Ritz projection parameters");
  const TensorSplineSpace& space = X0.space();
  const int p = space.degree();
  const int n = space.dim();
  const MassStiffness ms = assemble_mass_stiffness(X0, ParametricMesh(space.num_elements(), p + 2));
  const SparseMatrix M3 = block_diagonal3(ms.mass);
  const SparseMatrix A3 = block_diagonal3(ms.stiffness);
  const SparseMatrix H1 = A3 + M3;

  const Eigen::MatrixXd grad_load = source_h1_load(space, src, u, 0.0, p + 2);
  const Eigen::MatrixXd mass_load = source_h1_load(space, src, u, 1.0, p + 2) - grad_load;
  const Eigen::VectorXd flat_grad = Eigen::Map<const Eigen::VectorXd>(grad_load.data(), 3 * n);
  const Eigen::VectorXd flat_mass = Eigen::Map<const Eigen::VectorXd>(mass_load.data(), 3 * n);
  const Eigen::VectorXd src_boundary_load = source_boundary_load(trace, src_boundary, u, p + 2);

  // Constrained L2 projection of Q u: independent of lambda.
  const Eigen::VectorXd qu = SplineField(Q.space_ptr(), Q.apply(u.value, 3)).flat();
  const Eigen::VectorXd w_init = SaddleSolver(M3, S).solve(M3 * qu).primal;

  auto h1_norm = [&](const Eigen::VectorXd& d) { return std::sqrt(std::max(0.0, d.dot(H1 * d))); };

  double lambda = cfg.lambda;
  for (int escalation = 0; escalation <= cfg.max_escalations; ++escalation, lambda *= cfg.lambda_growth) {
    const SaddleSolver solver(SparseMatrix(A3 + lambda * M3), S);
    const Eigen::VectorXd b_src = flat_grad + lambda * flat_mass - src_boundary_load;
    Eigen::VectorXd w = w_init;
    RitzResult result{SplineField(X0.space_ptr(), 3), Eigen::VectorXd(), 0, lambda, {}};
    for (int it = 1; it <= cfg.fp_max_iter; ++it) {
      const SplineField wf = SplineField::from_flat(X0.space_ptr(), 3, w);
      const SaddleSolver::Solution sol = solver.solve(b_src + assemble_fb(trace, X0, wf, bd, p + 1));
      const double inc = h1_norm(sol.primal - w);
      result.increments.push_back(inc);
      w = sol.primal;
      result.iterations = it;
      if (inc <= cfg.fp_tol) {
        result.normal = SplineField::from_flat(X0.space_ptr(), 3, w);
        result.multiplier = sol.multiplier;
        return result;
      }
      const size_t k = result.increments.size();
      if (it <= cfg.contraction_window && k >= 2 && inc >= result.increments[k - 2]) {
        break;
      }
    }
  }
  throw NoContraction("Ritz fixed-point iteration failed to contract after raising lambda to " +
                      std::to_string(lambda / cfg.lambda_growth));
}

}  // namespace igamcf
