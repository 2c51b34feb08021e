#include <doctest.h>

#include <cmath>

#include "igamcf/errors.hpp"
#include "igamcf/flow_solver.hpp"
#include "igamcf/projections.hpp"
#include "igamcf/scenarios.hpp"

using namespace igamcf;

namespace {

using Fn = std::function<Eigen::VectorXd(double, double)>;
using GradFn = std::function<Eigen::MatrixXd(double, double)>;

SplineField interp(const SpacePtr& space, const Fn& f, int d, BoundaryMode mode = BoundaryMode::keep) {
  return SplineField(space, QuasiInterpolant(space).apply(f, d, mode));
}

// Parametric H1 (value + gradient) error against an analytic function,
// p+3 Gauss points per direction on every element.
double h1_error(const SplineField& f, const Fn& g, const GradFn& dg) {
  const int n = f.space().num_elements();
  const ParametricMesh m(n, f.space().degree() + 3);
  double s = 0.0;
  for (int e1 = 0; e1 < n; ++e1)
    for (int e2 = 0; e2 < n; ++e2)
      for (int a = 0; a < m.points(); ++a)
        for (int b = 0; b < m.points(); ++b) {
          const double u = m.node(e1, a), v = m.node(e2, b);
          s += m.weight(a, b) * ((f.value(u, v) - g(u, v)).squaredNorm() + (f.gradient(u, v) - dg(u, v)).squaredNorm());
        }
  return std::sqrt(s);
}

std::vector<double> eoc(const std::vector<double>& e) {
  std::vector<double> r;
  for (size_t k = 1; k < e.size(); ++k) r.push_back(std::log2(e[k - 1] / e[k]));
  return r;
}

const Scenario& sphere() {
  static const Scenario s = sphere_patch(kSphereExtent);
  return s;
}

Fn position_of(const Scenario& s) {
  return [s](double u, double v) -> Eigen::VectorXd { return s.surface.position(u, v); };
}

}  // namespace

TEST_CASE("surface quasi-interpolation") {
  const SpacePtr space = build_space(2, 1, 6);
  const QuasiInterpolant Q(space);
  const SplineField X = interp(space, position_of(sphere()), 3);
  SUBCASE("coordinates of X reproduce X") {
    const SplineField Y = surface_quasi_interp(Q, X, [](const Eigen::Vector3d& x, double, double) -> Eigen::VectorXd { return x; }, 3);
    CHECK((Y.coeffs() - X.coeffs()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("constant one") {
    const SplineField Y = surface_quasi_interp(
        Q, X, [](const Eigen::Vector3d&, double, double) { return Eigen::VectorXd::Ones(1); }, 1);
    CHECK((Y.coeffs().array() - 1.0).abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("zero boundary mode") {
    const SplineField Y = surface_quasi_interp(
        Q, X, [](const Eigen::Vector3d&, double, double) { return Eigen::VectorXd::Ones(1); }, 1, BoundaryMode::zero);
    for (int j : space->boundary_indices()) CHECK(Y.coeffs()(j, 0) == 0.0);
  }
}

TEST_CASE("interpolated sphere coordinates converge in H1 at order >= 1.8") {
  const AnalyticSurface& s = sphere().surface;
  std::vector<double> err;
  for (int n : {4, 8, 16, 32}) {
    const SpacePtr space = build_space(2, 1, n);
    const SplineField X = interp(space, position_of(sphere()), 3);
    const QuasiInterpolant Q(space);
    const SplineField x = surface_quasi_interp(
        Q, X, [](const Eigen::Vector3d& p, double, double) { return Eigen::VectorXd::Constant(1, p[0]); }, 1);
    err.push_back(h1_error(
        x, [&](double u, double v) { return Eigen::VectorXd::Constant(1, s.position(u, v)[0]); },
        [&](double u, double v) -> Eigen::MatrixXd { return s.jacobian(u, v).row(0); }));
  }
  for (double r : eoc(err)) CHECK(r >= 1.8);
}

TEST_CASE("boundary quasi-interpolation") {
  const SpacePtr space = build_space(2, 1, 8);
  const BoundaryTrace trace(space);
  SUBCASE("straight edges have zero curvature data") {
    const BoundaryData bd = boundary_quasi_interp(trace, perturbed_plane(0.3).surface.boundary());
    for (Edge e : kEdges) CHECK(bd.curvature_on(e).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("reversed tangent is negated exactly") {
    const ParametricBoundary exact = sphere().surface.boundary();
    const ParametricBoundary reversed{[exact](Edge e, double s) {
      EdgeGeometry g = exact.at(e, s);
      g.tangent = -g.tangent;
      return g;
    }};
    const BoundaryData a = boundary_quasi_interp(trace, exact), b = boundary_quasi_interp(trace, reversed);
    for (Edge e : kEdges) CHECK((a.tangent_on(e) + b.tangent_on(e)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("unit length of the interpolated tangent improves at order >= p+1 - 0.2") {
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      const SpacePtr sp = build_space(2, 1, n);
      const BoundaryTrace tr(sp);
      const BoundaryData bd = boundary_quasi_interp(tr, sphere().surface.boundary());
      double e = 0.0;
      for (Edge edge : kEdges) {
        const UnivariateSpline& es = tr.edge_space(edge);
        for (double s = 0.013; s < 1.0; s += 0.031) {
          const int el = es.element_of(s);
          const Eigen::MatrixXd vals = es.evaluate(el, s, 0);
          const Eigen::Vector3d t = (vals * bd.tangent_on(edge).middleRows(es.first_active(el), 3)).transpose();
          e = std::max(e, std::abs(t.norm() - 1));
        }
      }
      err.push_back(e);
    }
    for (double r : eoc(err)) CHECK(r >= 2.8);
  }
}

TEST_CASE("velocity projection") {
  const SpacePtr space = build_space(2, 1, 20);
  const QuasiInterpolant Q(space);
  const SplineField nu = interp(space, [](double u, double v) -> Eigen::VectorXd { return sphere().surface.normal(u, v); }, 3);
  SUBCASE("zero curvature gives zero velocity") {
    const SplineField k(space, Eigen::MatrixXd::Zero(space->dim(), 1));
    CHECK(project_velocity(Q, k, nu).coeffs().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("sphere at t = 0 moves along +2 nu away from the boundary ring") {
    const SplineField k = interp(space, [](double, double) { return Eigen::VectorXd::Constant(1, -2.0); }, 1,
                                 BoundaryMode::zero);
    const SplineField v = project_velocity(Q, k, nu);
    for (int j : space->boundary_indices()) CHECK(v.coeffs().row(j).norm() == 0.0);
    double dev = 0.0;
    for (double a = 0.1; a <= 0.9; a += 0.02)
      for (double b = 0.1; b <= 0.9; b += 0.02)
        dev = std::max(dev, (v.value(a, b) - 2 * sphere().surface.normal(a, b)).norm());
    CHECK(dev <= 0.05);
  }
}

TEST_CASE("linear zero-trace Ritz projection") {
  SUBCASE("reproduces members of the zero-trace space") {
    const SpacePtr space = build_space(2, 1, 6);
    const SplineField X = interp(space, position_of(sphere()), 3);
    const SplineField w = interp(space, [](double u, double v) { return Eigen::VectorXd::Constant(1, u * v * (1 - u) * std::sin(3 * v)); }, 1,
                                 BoundaryMode::zero);
    const SplineField r = linear_ritz_zero_trace(X, as_parametric_surface(X), as_parametric_field(w));
    CHECK((r.coeffs() - w.coeffs()).cwiseAbs().maxCoeff() <= 1e-9);
    const SplineField z(space, Eigen::MatrixXd::Zero(space->dim(), 1));
    CHECK(linear_ritz_zero_trace(X, as_parametric_surface(X), as_parametric_field(z)).coeffs().norm() == 0.0);
  }
  SUBCASE("sin sin on the flat patch converges in H1 at order >= 1.8") {
    const Fn g = [](double u, double v) { return Eigen::VectorXd::Constant(1, std::sin(M_PI * u) * std::sin(M_PI * v)); };
    const GradFn dg = [](double u, double v) -> Eigen::MatrixXd {
      Eigen::MatrixXd d(1, 2);
      d << M_PI * std::cos(M_PI * u) * std::sin(M_PI * v), M_PI * std::sin(M_PI * u) * std::cos(M_PI * v);
      return d;
    };
    const ParametricField u{1, g, dg};
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      const SpacePtr space = build_space(2, 1, n);
      const SplineField X = interp(space, [](double a, double b) { return Eigen::Vector3d(a, b, 0).eval(); }, 3);
      const ParametricSurface flat{[](double, double) { return Matrix32(Matrix32::Identity()); }};
      err.push_back(h1_error(linear_ritz_zero_trace(X, flat, u), g, dg));
    }
    for (double r : eoc(err)) CHECK(r >= 1.8);
  }
}

TEST_CASE("nonlinear Ritz projection of the normal") {
  SUBCASE("flat patch returns the constant normal in at most two iterations") {
    const FlowProblem flat(perturbed_plane(0.0), 2, 1, 6);
    const auto init = flat.initialize();
    CHECK(init.ritz.iterations <= 2);
    for (int j = 0; j < flat.space().dim(); ++j)
      CHECK((init.ritz.normal.coeffs().row(j) - Eigen::RowVector3d(0, 0, 1)).norm() <= 1e-12);
    CHECK((flat.constraint() * init.state.nu).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("sphere patch: constraint, contraction and H1 order") {
    const AnalyticSurface& s = sphere().surface;
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      const FlowProblem p(sphere(), 2, 1, n);
      const auto init = p.initialize();
      CHECK((p.constraint() * init.state.nu).cwiseAbs().maxCoeff() <= 1e-10);
      const auto& inc = init.ritz.increments;
      REQUIRE(inc.size() >= 4);
      for (size_t k = inc.size() - 3; k < inc.size(); ++k) CHECK(inc[k] <= inc[k - 1]);
      CHECK(inc.back() <= p.ritz_config().fp_tol);
      err.push_back(h1_error(
          init.ritz.normal, [&](double u, double v) -> Eigen::VectorXd { return s.normal(u, v); },
          [&](double u, double v) -> Eigen::MatrixXd { return s.normal_jacobian(u, v); }));
    }
    for (double r : eoc(err)) CHECK(r >= 1.8);
  }
  SUBCASE("a non-contracting configuration is reported") {
    RitzConfig cfg;
    cfg.fp_max_iter = 1;
    cfg.max_escalations = 0;
    const FlowProblem p(sphere(), 2, 1, 4, cfg);
    CHECK_THROWS_AS(p.initialize(), NoContraction);
  }
}
