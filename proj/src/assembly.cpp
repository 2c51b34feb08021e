#include "igamcf/assembly.hpp"

#include <unsupported/Eigen/SparseExtra>

#include <cmath>
#include <vector>

#include "igamcf/errors.hpp"
#include "igamcf/parallel.hpp"

namespace igamcf {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Quadrature-point data of one element: parametric weights times area
// element, basis values and surface gradients of the local basis.
struct ElementPoints {
  std::vector<int> dofs;
  std::vector<double> qw;                  // weight * q
  std::vector<Eigen::VectorXd> values;     // nloc
  std::vector<Eigen::MatrixXd> grads;      // 3 x nloc
  std::vector<GeometrySample> samples;
};

void element_points(const SplineField& X, const ElementBasis& basis, int e1, int e2, ElementPoints& out) {
  const ParametricMesh& mesh = basis.mesh();
  const int nq = mesh.points();
  out.dofs = X.space().element_dofs(e1, e2);
  out.qw.clear();
  out.values.clear();
  out.grads.clear();
  out.samples.clear();
  Eigen::VectorXd val, du, dv;
  for (int q2 = 0; q2 < nq; ++q2) {
    for (int q1 = 0; q1 < nq; ++q1) {
      basis.evaluate(e1, e2, q1, q2, val, du, dv);
      Matrix32 J = Matrix32::Zero();
      for (size_t k = 0; k < out.dofs.size(); ++k) {
        const Eigen::Vector3d c = X.coeffs().row(out.dofs[k]).transpose();
        J.col(0) += du[k] * c;
        J.col(1) += dv[k] * c;
      }
      GeometrySample g = make_sample(J, {mesh.node(e1, q1), mesh.node(e2, q2)});
      Eigen::MatrixXd pg(2, val.size());
      pg.row(0) = du.transpose();
      pg.row(1) = dv.transpose();
      out.grads.push_back(g.pushforward * pg);
      out.values.push_back(val);
      out.qw.push_back(mesh.weight(q1, q2) * g.area_element);
      out.samples.push_back(g);
    }
  }
}

// |A_h|^2 at one quadrature point from the local normal coefficients.
double weingarten_sq(const Eigen::MatrixXd& local_nu, const Eigen::MatrixXd& grads) {
  // Rows of A are the surface gradients of the components of nu.
  const Eigen::Matrix3d A = local_nu.transpose() * grads.transpose();
  return A.squaredNorm();
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& coeffs, const std::vector<int>& dofs) {
  Eigen::MatrixXd out(dofs.size(), coeffs.cols());
  for (size_t k = 0; k < dofs.size(); ++k) out.row(k) = coeffs.row(dofs[k]);
  return out;
}

SparseMatrix from_chunks(int rows, int cols, std::vector<Triplets>& chunks) {
  size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  Triplets all;
  all.reserve(total);
  for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
  SparseMatrix K(rows, cols);
  K.setFromTriplets(all.begin(), all.end());
  return K;
}

// One Gauss point on a boundary edge with the univariate trace basis.
struct EdgeQuadPoint {
  Edge edge;
  int first;              // first active edge-local basis index
  double weight;          // parametric weight
  Eigen::RowVectorXd b;   // values of the p+1 active functions
  Eigen::RowVectorXd db;  // edge-parameter derivatives
};

template <class Body>
void for_each_edge_point(const BoundaryTrace& trace, int points, Body body) {
  const GaussRule rule = gauss_legendre(points);
  for (Edge edge : kEdges) {
    const UnivariateSpline& es = trace.edge_space(edge);
    const double h = es.element_size();
    for (int e = 0; e < es.num_elements(); ++e) {
      for (int q = 0; q < points; ++q) {
        const double s = (e + rule.nodes[q]) * h;
        const Eigen::MatrixXd B = es.evaluate(e, s, 1);
        EdgeQuadPoint p{edge, es.first_active(e), rule.weights[q] * h, B.row(0), B.row(1)};
        body(p);
      }
    }
  }
}

std::array<Eigen::MatrixXd, 4> restrict_all(const BoundaryTrace& trace, const Eigen::MatrixXd& coeffs) {
  std::array<Eigen::MatrixXd, 4> out;
  for (Edge e : kEdges) out[static_cast<int>(e)] = trace.restrict(e, coeffs);
  return out;
}

}  // namespace

MassStiffness assemble_mass_stiffness(const SplineField& X, const ParametricMesh& mesh) {
  if (X.components() != 3) throw InvalidArgument("position field must have 3 components");
  const TensorSplineSpace& space = X.space();
  const ElementBasis basis(space, mesh);
  const int ne = mesh.num_elements();
  std::vector<Triplets> mass_chunks(ne), stiff_chunks(ne);
  parallel_chunks(ne * ne, ne, [&](int c, int begin, int end) {
    ElementPoints ep;
    for (int e = begin; e < end; ++e) {
      element_points(X, basis, e % ne, e / ne, ep);
      const int nloc = static_cast<int>(ep.dofs.size());
      Eigen::MatrixXd Me = Eigen::MatrixXd::Zero(nloc, nloc);
      Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(nloc, nloc);
      for (size_t q = 0; q < ep.qw.size(); ++q) {
        Me.noalias() += ep.qw[q] * ep.values[q] * ep.values[q].transpose();
        Ae.noalias() += ep.qw[q] * ep.grads[q].transpose() * ep.grads[q];
      }
      for (int a = 0; a < nloc; ++a) {
        for (int b = 0; b < nloc; ++b) {
          mass_chunks[c].emplace_back(ep.dofs[a], ep.dofs[b], Me(a, b));
          stiff_chunks[c].emplace_back(ep.dofs[a], ep.dofs[b], Ae(a, b));
        }
      }
    }
  });
  MassStiffness out;
  out.mass = from_chunks(space.dim(), space.dim(), mass_chunks);
  out.stiffness = from_chunks(space.dim(), space.dim(), stiff_chunks);
  out.mass_zero_trace = restrict_to_interior(out.mass, space);
  out.stiffness_zero_trace = restrict_to_interior(out.stiffness, space);
  return out;
}

SparseMatrix restrict_to_interior(const SparseMatrix& K, const TensorSplineSpace& space) {
  Triplets sel;
  const auto& interior = space.interior_indices();
  for (size_t k = 0; k < interior.size(); ++k) sel.emplace_back(static_cast<int>(k), interior[k], 1.0);
  SparseMatrix P(space.num_interior(), space.dim());
  P.setFromTriplets(sel.begin(), sel.end());
  return SparseMatrix(P * K * P.transpose());
}

SparseMatrix block_diagonal3(const SparseMatrix& K) {
  Triplets t;
  t.reserve(3 * K.nonZeros());
  for (int d = 0; d < 3; ++d)
    for (int k = 0; k < K.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(K, k); it; ++it)
        t.emplace_back(d * K.rows() + it.row(), d * K.cols() + it.col(), it.value());
  SparseMatrix out(3 * K.rows(), 3 * K.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

CornerConstraint parse_corner_constraint(const std::string& name) {
  if (name == "split") return CornerConstraint::split;
  if (name == "shared") return CornerConstraint::shared;
  throw InvalidArgument("unknown corner constraint mode '" + name + "'");
}

int constraint_rows(const BoundaryTrace& trace, CornerConstraint corners) {
  if (corners == CornerConstraint::shared) return trace.num_dofs();
  int rows = 0;
  for (Edge e : kEdges) rows += trace.dofs_per_edge(e);
  return rows;
}

SparseMatrix assemble_constraint_S(const BoundaryTrace& trace, const SplineField& X0, const BoundaryData& bd,
                                   int points, CornerConstraint corners) {
  const TensorSplineSpace& space = trace.space();
  std::array<int, 4> edge_offset{};
  for (int e = 1; e < 4; ++e) edge_offset[e] = edge_offset[e - 1] + trace.dofs_per_edge(kEdges[e - 1]);
  const int n = space.dim();
  Triplets t;
  const auto xr = restrict_all(trace, X0.coeffs());
  for_each_edge_point(trace, points, [&](const EdgeQuadPoint& p) {
    const int nloc = static_cast<int>(p.b.size());
    const Eigen::MatrixXd xe = xr[static_cast<int>(p.edge)].middleRows(p.first, nloc);
    const Eigen::MatrixXd te = bd.tangent_on(p.edge).middleRows(p.first, nloc);
    const Eigen::Vector3d dx = (p.db * xe).transpose();
    Eigen::Vector3d tau = (p.b * te).transpose();
    tau /= tau.norm();
    const double w = p.weight * dx.norm();
    for (int a = 0; a < nloc; ++a) {
      const int row = corners == CornerConstraint::shared
                          ? trace.trace_position(trace.flat_index(p.edge, p.first + a))
                          : edge_offset[static_cast<int>(p.edge)] + p.first + a;
      for (int c = 0; c < nloc; ++c) {
        const int col = trace.flat_index(p.edge, p.first + c);
        for (int k = 0; k < 3; ++k) t.emplace_back(row, k * n + col, w * p.b[a] * p.b[c] * tau[k]);
      }
    }
  });
  SparseMatrix S(constraint_rows(trace, corners), 3 * n);
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

Eigen::VectorXd assemble_f1(const SplineField& X, const SplineField& kappa, const SplineField& nu,
                            const ParametricMesh& mesh) {
  const TensorSplineSpace& space = X.space();
  const ElementBasis basis(space, mesh);
  const int ne = mesh.num_elements();
  std::vector<Eigen::VectorXd> partial(ne, Eigen::VectorXd::Zero(space.dim()));
  parallel_chunks(ne * ne, ne, [&](int c, int begin, int end) {
    ElementPoints ep;
    for (int e = begin; e < end; ++e) {
      element_points(X, basis, e % ne, e / ne, ep);
      const Eigen::MatrixXd nloc = gather(nu.coeffs(), ep.dofs);
      const Eigen::VectorXd kloc = gather(kappa.coeffs(), ep.dofs).col(0);
      for (size_t q = 0; q < ep.qw.size(); ++q) {
        const double a2 = weingarten_sq(nloc, ep.grads[q]);
        const double k = ep.values[q].dot(kloc);
        for (size_t a = 0; a < ep.dofs.size(); ++a) partial[c][ep.dofs[a]] += ep.qw[q] * a2 * k * ep.values[q][a];
      }
    }
  });
  Eigen::VectorXd full = Eigen::VectorXd::Zero(space.dim());
  for (const auto& p : partial) full += p;
  Eigen::VectorXd out(space.num_interior());
  const auto& interior = space.interior_indices();
  for (size_t k = 0; k < interior.size(); ++k) out[k] = full[interior[k]];
  return out;
}

Eigen::VectorXd assemble_f2(const SplineField& X, const SplineField& nu, const ParametricMesh& mesh) {
  const TensorSplineSpace& space = X.space();
  const ElementBasis basis(space, mesh);
  const int ne = mesh.num_elements();
  const int n = space.dim();
  std::vector<Eigen::VectorXd> partial(ne, Eigen::VectorXd::Zero(3 * n));
  parallel_chunks(ne * ne, ne, [&](int c, int begin, int end) {
    ElementPoints ep;
    for (int e = begin; e < end; ++e) {
      element_points(X, basis, e % ne, e / ne, ep);
      const Eigen::MatrixXd nloc = gather(nu.coeffs(), ep.dofs);
      for (size_t q = 0; q < ep.qw.size(); ++q) {
        const double a2 = weingarten_sq(nloc, ep.grads[q]);
        const Eigen::Vector3d nuq = (ep.values[q].transpose() * nloc).transpose();
        for (size_t a = 0; a < ep.dofs.size(); ++a)
          for (int k = 0; k < 3; ++k) partial[c][k * n + ep.dofs[a]] += ep.qw[q] * a2 * nuq[k] * ep.values[q][a];
      }
    }
  });
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * n);
  for (const auto& p : partial) out += p;
  return out;
}

Eigen::VectorXd assemble_fb(const BoundaryTrace& trace, const SplineField& X, const SplineField& nu,
                            const BoundaryData& bd, int points) {
  const int n = trace.space().dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * n);
  const auto xr = restrict_all(trace, X.coeffs());
  const auto nr = restrict_all(trace, nu.coeffs());
  for_each_edge_point(trace, points, [&](const EdgeQuadPoint& p) {
    const int nloc = static_cast<int>(p.b.size());
    const Eigen::MatrixXd xe = xr[static_cast<int>(p.edge)].middleRows(p.first, nloc);
    const Eigen::MatrixXd ne = nr[static_cast<int>(p.edge)].middleRows(p.first, nloc);
    const Eigen::Vector3d dx = (p.db * xe).transpose();
    const Eigen::Vector3d nuq = (p.b * ne).transpose();
    const Eigen::Vector3d tau = (p.b * bd.tangent_on(p.edge).middleRows(p.first, nloc)).transpose();
    const Eigen::Vector3d kap = (p.b * bd.curvature_on(p.edge).middleRows(p.first, nloc)).transpose();
    const Eigen::Vector3d load = nuq.dot(kap) * nuq.cross(tau) * (p.weight * dx.norm());
    for (int a = 0; a < nloc; ++a) {
      const int flat = trace.flat_index(p.edge, p.first + a);
      for (int k = 0; k < 3; ++k) out[k * n + flat] += load[k] * p.b[a];
    }
  });
  return out;
}

NormalLoads assemble_f2_fb(const BoundaryTrace& trace, const SplineField& X, const SplineField& nu,
                           const BoundaryData& bd, const ParametricMesh& mesh, int boundary_points) {
  return {assemble_f2(X, nu, mesh), assemble_fb(trace, X, nu, bd, boundary_points)};
}

void write_matrix_market(const std::string& path, const SparseMatrix& K) {
  if (!Eigen::saveMarket(K, path)) throw IoError("cannot write matrix to " + path);
}

}  // namespace igamcf
