#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "igamcf/errors.hpp"
#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"
#include "oracles.hpp"

using namespace igamcf;

namespace {

// Cox-de Boor recursion straight from the knot vector; independent of the
// element-local evaluation in the library.
double cox_de_boor(const std::vector<double>& t, int i, int p, double x) {
  if (p == 0) {
    const bool last = x == t.back() && t[i] < t[i + 1] && t[i + 1] == t.back();
    return (t[i] <= x && x < t[i + 1]) || last ? 1.0 : 0.0;
  }
  double a = 0.0, b = 0.0;
  if (t[i + p] > t[i]) a = (x - t[i]) / (t[i + p] - t[i]) * cox_de_boor(t, i, p - 1, x);
  if (t[i + p + 1] > t[i + 1]) b = (t[i + p + 1] - x) / (t[i + p + 1] - t[i + 1]) * cox_de_boor(t, i + 1, p - 1, x);
  return a + b;
}

}  // namespace

TEST_CASE("space dimensions") {
  CHECK(build_space(2, 1, 20)->dim() == 484);
  CHECK(build_space(2, 1, 1)->dim() == 9);
  const SpacePtr s = build_space(3, 0, 4);
  CHECK(s->u_space().dim() == 13);
  CHECK(s->dim() == 169);
}

TEST_CASE("invalid spaces are rejected") {
  CHECK_THROWS_AS(build_space(1, 0, 4), InvalidArgument);
  CHECK_THROWS_AS(build_space(2, 2, 4), InvalidArgument);
  CHECK_THROWS_AS(build_space(2, -1, 4), InvalidArgument);
  CHECK_THROWS_AS(build_space(2, 1, 0), InvalidArgument);
}

TEST_CASE("open knot vector with repeated interior knots") {
  for (auto [p, l, n] : {std::tuple{2, 1, 5}, {3, 0, 4}, {3, 2, 3}, {4, 1, 2}}) {
    const UnivariateSpline s(p, l, n);
    const auto& t = s.knots();
    CHECK(static_cast<int>(t.size()) == s.dim() + p + 1);
    for (int k = 0; k <= p; ++k) {
      CHECK(t[k] == 0.0);
      CHECK(t[t.size() - 1 - k] == 1.0);
    }
    for (int e = 1; e < n; ++e)
      CHECK(std::count_if(t.begin(), t.end(), [&](double x) { return std::abs(x - double(e) / n) < 1e-14; }) ==
            p - l);
    CHECK(std::is_sorted(t.begin(), t.end()));
  }
}

TEST_CASE("univariate evaluation matches Cox-de Boor") {
  for (auto [p, l, n] : {std::tuple{2, 1, 5}, {3, 0, 4}, {3, 2, 3}}) {
    const UnivariateSpline s(p, l, n);
    for (double x : {0.0, 0.013, 0.25, 0.5, 0.61, 0.999, 1.0}) {
      const int e = s.element_of(x);
      const Eigen::MatrixXd vals = s.evaluate(e, x, 0);
      for (int k = 0; k <= p; ++k)
        CHECK(vals(0, k) == doctest::Approx(cox_de_boor(s.knots(), s.first_active(e) + k, p, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("derivatives match finite differences") {
  const UnivariateSpline s(3, 1, 4);
  const double x = 0.37, h = 1e-6;
  const int e = s.element_of(x);
  const Eigen::MatrixXd d = s.evaluate(e, x, 2);
  const Eigen::MatrixXd a = s.evaluate(e, x - h, 0), b = s.evaluate(e, x + h, 0);
  const Eigen::MatrixXd da = s.evaluate(e, x - h, 1), db = s.evaluate(e, x + h, 1);
  for (int k = 0; k <= 3; ++k) {
    CHECK(d(1, k) == doctest::Approx((b(0, k) - a(0, k)) / (2 * h)).epsilon(1e-7));
    CHECK(d(2, k) == doctest::Approx((db(1, k) - da(1, k)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("support spans at most p+1 elements") {
  const UnivariateSpline s(3, 1, 6);
  for (int i = 0; i < s.dim(); ++i) {
    const auto [a, b] = s.support(i);
    CHECK(b - a + 1 <= 4);
    CHECK(a >= 0);
    CHECK(b < 6);
  }
}

TEST_CASE("partition of unity and nonnegativity at random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (auto [p, l, n] : {std::tuple{2, 1, 7}, {3, 0, 3}, {4, 3, 5}}) {
    const TensorSplineSpace s(p, l, n);
    for (int k = 0; k < 200; ++k) {
      const auto bs = s.eval_basis(U(rng), U(rng), 1);
      CHECK(static_cast<int>(bs.size()) == (p + 1) * (p + 1));
      double sum = 0.0;
      Eigen::Vector2d grad = Eigen::Vector2d::Zero();
      for (const auto& b : bs) {
        CHECK(b.value >= -1e-15);
        sum += b.value;
        grad += b.gradient;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-14);
      CHECK(grad.norm() <= 1e-10);
    }
  }
}

TEST_CASE("gradient sum vanishes at the element corner point") {
  const TensorSplineSpace s(2, 1, 2);
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (const auto& b : s.eval_basis(0.5, 0.5, 1)) g += b.gradient;
  CHECK(g.norm() <= 1e-12);
}

TEST_CASE("corners are interpolated") {
  const TensorSplineSpace s(3, 1, 4);
  const auto at = [&](double u, double v) { return oracle::full_basis(s, u, v); };
  const int n = s.u_space().dim();
  CHECK(at(0, 0)[s.flat_index(0, 0)] == doctest::Approx(1.0));
  CHECK(at(1, 0)[s.flat_index(n - 1, 0)] == doctest::Approx(1.0));
  CHECK(at(1, 1)[s.flat_index(n - 1, n - 1)] == doctest::Approx(1.0));
  CHECK(at(0, 1)[s.flat_index(0, n - 1)] == doctest::Approx(1.0));
  int nonzero = 0;
  for (double x : at(0, 0)) nonzero += x != 0.0;
  CHECK(nonzero == 1);
}

TEST_CASE("points outside the square are rejected") {
  const TensorSplineSpace s(2, 1, 3);
  CHECK_THROWS_AS(s.eval_basis(-1e-9, 0.5, 0), InvalidArgument);
  CHECK_THROWS_AS(s.eval_basis(0.5, 1.0 + 1e-9, 0), InvalidArgument);
}

TEST_CASE("boundary and interior index sets") {
  const TensorSplineSpace s(3, 1, 4);
  const int n = s.u_space().dim();
  CHECK(s.num_boundary() + s.num_interior() == s.dim());
  CHECK(s.num_boundary() == 4 * n - 4);
  std::vector<int> seen(s.dim(), 0);
  for (int j : s.boundary_indices()) ++seen[j];
  for (int j : s.interior_indices()) ++seen[j];
  for (int c : seen) CHECK(c == 1);
  for (int j = 0; j < s.dim(); ++j) {
    const auto [a, b] = s.pair_index(j);
    CHECK(s.flat_index(a, b) == j);
    CHECK(s.is_boundary(j) == (a == 0 || b == 0 || a == n - 1 || b == n - 1));
  }
  // Interior functions vanish on the boundary.
  for (double t : {0.0, 0.3, 0.77, 1.0})
    for (const Eigen::Vector2d& pt : {Eigen::Vector2d(t, 0.0), Eigen::Vector2d(1.0, t), Eigen::Vector2d(t, 1.0),
                                      Eigen::Vector2d(0.0, t)}) {
      const auto vals = oracle::full_basis(s, pt[0], pt[1]);
      for (int j : s.interior_indices()) CHECK(std::abs(vals[j]) <= 1e-15);
    }
}

TEST_CASE("Gauss rules and mesh weights") {
  for (int n = 1; n <= 8; ++n) {
    const GaussRule r = gauss_legendre(n);
    double sum = 0.0, mono = 0.0;
    for (size_t k = 0; k < r.nodes.size(); ++k) {
      CHECK(r.weights[k] > 0.0);
      sum += r.weights[k];
      mono += r.weights[k] * std::pow(r.nodes[k], 2 * n - 1);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mono == doctest::Approx(1.0 / (2 * n)).epsilon(1e-13));
  }
  const ParametricMesh m(5, 3);
  double w = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) w += m.weight(a, b);
  CHECK(w == doctest::Approx(m.h() * m.h()).epsilon(1e-14));
}

TEST_CASE("dual functionals are biorthogonal to the basis") {
  for (auto [p, l, n] : {std::tuple{2, 1, 6}, {3, 0, 3}, {3, 2, 5}}) {
    const SpacePtr space = build_space(p, l, n);
    const QuasiInterpolant Q(space);
    const auto& pu = Q.u_functionals().points();
    const auto& pv = Q.v_functionals().points();
    double worst = 0.0;
    for (int i = 0; i < space->dim(); ++i) {
      Eigen::MatrixXd samples(pu.size(), pv.size());
      for (size_t a = 0; a < pu.size(); ++a)
        for (size_t b = 0; b < pv.size(); ++b) samples(a, b) = oracle::full_basis(*space, pu[a], pv[b])[i];
      for (int j = 0; j < space->dim(); ++j) worst = std::max(worst, std::abs(Q.functional(j, samples) - (i == j)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("functionals read a bounded number of elements") {
  const UnivariateSpline s(3, 1, 6);
  const UnivariateQuasiInterpolant q(s);
  for (int i = 0; i < s.dim(); ++i) {
    const auto& w = q.weights(i);
    const double lo = q.points()[q.first(i)], hi = q.points()[q.first(i) + w.size() - 1];
    CHECK(s.element_of(hi) - s.element_of(lo) + 1 <= 4);
  }
}

TEST_CASE("quasi-interpolant reproduces polynomials of degree p") {
  for (auto [p, l] : {std::pair{2, 1}, {3, 0}, {3, 2}}) {
    const SpacePtr space = build_space(p, l, 5);
    const QuasiInterpolant Q(space);
    const auto f = [p](double u, double v) {
      return Eigen::VectorXd::Constant(1, std::pow(u, p) - 0.5 * std::pow(v, p) + u * v + 0.3);
    };
    const SplineField F(space, Q.apply(f, 1));
    double worst = 0.0;
    for (double u : {0.0, 0.11, 0.5, 0.83, 1.0})
      for (double v : {0.0, 0.29, 0.64, 1.0}) worst = std::max(worst, std::abs(F.value(u, v)[0] - f(u, v)[0]));
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("quasi-interpolant L2 error converges at order p+1") {
  const auto f = [](double u, double v) { return Eigen::VectorXd::Constant(1, std::sin(3 * u) * std::exp(v)); };
  for (int p : {2, 3}) {
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      const SpacePtr space = build_space(p, p - 1, n);
      const SplineField F(space, QuasiInterpolant(space).apply(f, 1));
      const ParametricMesh m(n, p + 3);
      double e2 = 0.0;
      for (int e1 = 0; e1 < n; ++e1)
        for (int e2i = 0; e2i < n; ++e2i)
          for (int a = 0; a < m.points(); ++a)
            for (int b = 0; b < m.points(); ++b) {
              const double u = m.node(e1, a), v = m.node(e2i, b);
              e2 += m.weight(a, b) * std::pow(F.value(u, v)[0] - f(u, v)[0], 2);
            }
      err.push_back(std::sqrt(e2));
    }
    for (size_t k = 1; k < err.size(); ++k) CHECK(std::log2(err[k - 1] / err[k]) >= p + 0.8);
  }
}

TEST_CASE("refinement consistency: the coarse spline is reproduced on the fine space") {
  const SpacePtr coarse = build_space(2, 1, 3), fine = build_space(2, 1, 6);
  const SplineField F(coarse, QuasiInterpolant(coarse).apply(
                                  [](double u, double v) { return Eigen::VectorXd::Constant(1, std::cos(u + 2 * v)); }, 1));
  const SplineField G(fine,
                      QuasiInterpolant(fine).apply([&](double u, double v) { return F.value(u, v); }, 1));
  for (double u : {0.0, 0.2, 0.45, 0.9})
    for (double v : {0.1, 0.5, 1.0}) CHECK(G.value(u, v)[0] == doctest::Approx(F.value(u, v)[0]).epsilon(1e-12));
}

TEST_CASE("zero boundary mode clears exactly the boundary coefficients") {
  const SpacePtr space = build_space(2, 1, 4);
  const Eigen::MatrixXd c =
      QuasiInterpolant(space).apply([](double, double) { return Eigen::VectorXd::Constant(1, 2.5); }, 1,
                                    BoundaryMode::zero);
  for (int j = 0; j < space->dim(); ++j) CHECK(c(j, 0) == (space->is_boundary(j) ? 0.0 : doctest::Approx(2.5)));
}

TEST_CASE("boundary trace bookkeeping") {
  const SpacePtr space = build_space(2, 1, 4);
  const BoundaryTrace trace(space);
  const int n = space->u_space().dim();
  CHECK(trace.num_dofs() == space->num_boundary());
  for (Edge e : kEdges) {
    CHECK(trace.dofs_per_edge(e) == n);
    for (int k = 0; k < n; ++k) CHECK(space->is_boundary(trace.flat_index(e, k)));
  }
  // Edge parameter runs along increasing u or v, and corners are shared.
  CHECK(trace.flat_index(Edge::bottom, 0) == trace.flat_index(Edge::left, 0));
  CHECK(trace.flat_index(Edge::bottom, n - 1) == trace.flat_index(Edge::right, 0));
  CHECK(trace.flat_index(Edge::top, n - 1) == trace.flat_index(Edge::right, n - 1));
  CHECK(trace.flat_index(Edge::top, 0) == trace.flat_index(Edge::left, n - 1));
  CHECK(edge_point(Edge::right, 0.25).isApprox(Eigen::Vector2d(1.0, 0.25)));
  CHECK(edge_point(Edge::top, 0.25).isApprox(Eigen::Vector2d(0.25, 1.0)));
}
