// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]  (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "igamcf/config.hpp"
#include "igamcf/convergence.hpp"
#include "igamcf/flow_solver.hpp"
#include "igamcf/projections.hpp"
#include "igamcf/scenarios.hpp"
#include "igamcf/surface_geometry.hpp"
#include "oracles.hpp"

using namespace igamcf;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ScenarioConfig shipped(const char* name) {
  return load_config((std::filesystem::path(IGAMCF_SOURCE_DIR) / "configs" / name).string());
}

// One scenario run with the per-step invariants recorded along the way.
struct TrackedRun {
  RunResult result;
  double worst_constraint = 0.0;
  bool boundary_fixed = true;
};

TrackedRun tracked_run(const ScenarioConfig& c) {
  const FlowProblem p(make_scenario(c), c.degree, c.smoothness, c.elements_per_side,
                      RitzConfig{c.ritz_lambda, c.ritz_fp_tol, c.ritz_fp_max_iter, c.ritz_lambda_growth},
                      c.solver_tolerance, parse_corner_constraint(c.corner_constraints));
  TrackedRun t;
  std::vector<double> x0;
  RunOptions opt;
  opt.dt = c.dt;
  opt.t_final = c.t_final;
  opt.bdf_order = c.bdf_order;
  opt.on_step = [&](const FlowState& s, const StepDiagnostics& d) {
    t.worst_constraint = std::max(t.worst_constraint, d.constraint_residual);
    const int n = p.space().dim();
    std::vector<double> bx;
    for (int k = 0; k < 3; ++k)
      for (int j : p.space().boundary_indices()) bx.push_back(s.x[k * n + j]);
    if (x0.empty()) x0 = bx;
    t.boundary_fixed = t.boundary_fixed && bx == x0;
  };
  t.result = run(p, opt);
  return t;
}

const TrackedRun& plane_run() {
  static const TrackedRun r = tracked_run(shipped("example1_plane.ini"));
  return r;
}

const TrackedRun& sphere_run() {
  static const TrackedRun r = tracked_run(shipped("example2_sphere.ini"));
  return r;
}

Verdict dimension() {
  const int dim = build_space(2, 1, 20)->dim();
  return {dim == 484, "dim = " + std::to_string(dim)};
}

// Largest deviations from -2 on [0.1, 0.9]^2, which avoids the elements that
// touch the boundary at N = 20 and N = 40: of the curvature field itself and
// of the trace of the Weingarten map of the discrete normal.
std::pair<double, double> sphere_curvature_errors(int n) {
  const FlowProblem p(sphere_patch(kSphereExtent), 2, 1, n);
  const FlowState s = p.initialize().state;
  const SplineField X = p.position(s), kappa = p.curvature(s), nu = p.normal(s);
  double ek = 0.0, ea = 0.0;
  for (int i = 0; i <= 80; ++i)
    for (int j = 0; j <= 80; ++j) {
      const double u = 0.1 + 0.8 * i / 80, v = 0.1 + 0.8 * j / 80;
      ek = std::max(ek, std::abs(kappa.value(u, v)[0] + 2.0));
      ea = std::max(ea, std::abs(weingarten(nu, geometry_at(X, u, v)).trace + 2.0));
    }
  return {ek, ea};
}

Verdict sphere_curvature() {
  const auto [k20, a20] = sphere_curvature_errors(20);
  const auto [k40, a40] = sphere_curvature_errors(40);
  const bool pass = k20 <= 0.05 && k40 <= 0.05 && a40 < a20;
  return {pass, "max|kappa_h+2| N=20 " + fmt("%.2e", k20) + ", N=40 " + fmt("%.2e", k40) +
                    "; max|tr A(nu_h)+2| N=20 " + fmt("%.2e", a20) + ", N=40 " + fmt("%.2e", a40)};
}

Verdict example1() {
  const TrackedRun& r = plane_run();
  const auto& d = r.result.diagnostics;
  double worst_rise = -INFINITY;
  for (size_t k = 1; k < d.size(); ++k) worst_rise = std::max(worst_rise, d[k].area - d[k - 1].area);
  const double final_area = d.back().area;
  const bool pass = !r.result.aborted && worst_rise <= 1e-8 && std::abs(final_area - 4.0) <= 1e-3;
  return {pass, "area " + fmt("%.7f", d.front().area) + " -> " + fmt("%.7f", final_area) + " at t=" +
                    fmt("%.4g", d.back().time) + ", largest step change " + fmt("%.2e", worst_rise) +
                    (r.result.aborted ? ", aborted: " + r.result.abort_reason : "")};
}

Verdict example2() {
  const TrackedRun& r = sphere_run();
  const auto& d = r.result.diagnostics;
  bool decreasing = true;
  size_t first_rise = 0;
  for (size_t k = 1; k < d.size(); ++k)
    if (!(d[k].area < d[k - 1].area) && decreasing) decreasing = false, first_rise = k;
  const bool pass = !r.result.aborted && decreasing && std::abs(d.front().area - 5.859) <= 5e-3;
  std::string detail = "area " + fmt("%.4f", d.front().area) + " -> " + fmt("%.4g", d.back().area) + " at t=" +
                       fmt("%.4g", d.back().time) + " (reference final value 4.354)";
  if (!decreasing) detail += ", first increase at t=" + fmt("%.4g", d[first_rise].time);
  if (r.result.aborted) detail += ", aborted: " + r.result.abort_reason;
  return {pass, detail};
}

Verdict convergence() {
  ScenarioConfig c = shipped("example1_plane.ini");
  const ConvergenceReport rep = convergence_study(c, {4, 8, 16, 32}, 0.05);
  bool pass = true;
  std::string detail = "H1 EOC";
  for (const char* v : {"position", "curvature", "normal"}) {
    const auto r = rep.rate(v, true);
    detail += std::string(" ") + v;
    for (double x : r.pairwise) {
      detail += fmt(" %.2f", x);
      pass = pass && x >= 1.8;
    }
    detail += fmt(" (fit %.2f)", r.fitted);
    pass = pass && r.fitted >= 1.8;
  }
  return {pass, detail};
}

Verdict invariants() {
  const TrackedRun& a = plane_run();
  const TrackedRun& b = sphere_run();
  const double worst = std::max(a.worst_constraint, b.worst_constraint);
  const bool fixed = a.boundary_fixed && b.boundary_fixed;
  return {worst <= 1e-10 && fixed, "max ||S nu||_inf plane " + fmt("%.2e", a.worst_constraint) + ", sphere " +
                                       fmt("%.2e", b.worst_constraint) + "; boundary bit-identical: " +
                                       (fixed ? "yes" : "no")};
}

Verdict stationarity() {
  const FlowProblem p(perturbed_plane(0.0), 2, 1, 20);
  const FlowState s0 = p.initialize().state;
  RunOptions opt;
  opt.dt = 0.0015625;
  opt.t_final = 100 * opt.dt;
  const RunResult r = run(p, opt);
  const FlowState& s = r.final_state;
  double d = 0.0;
  for (const auto& [a, b] : {std::pair{&s.x, &s0.x}, {&s.kappa, &s0.kappa}, {&s.nu, &s0.nu}, {&s.v, &s0.v}})
    d = std::max(d, (*a - *b).cwiseAbs().maxCoeff());
  const int steps = static_cast<int>(r.diagnostics.size()) - 1;
  return {!r.aborted && steps == 100 && d <= 1e-12,
          std::to_string(steps) + " steps, max coefficient change " + fmt("%.2e", d)};
}

Verdict oracles() {
  std::string detail;
  bool pass = true;
  // Dual functionals against the basis.
  {
    const SpacePtr space = build_space(2, 1, 6);
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
    pass = pass && worst <= 1e-10;
    detail += "dual " + fmt("%.1e", worst);
  }
  // Reproduction of a full degree-2 polynomial.
  {
    const SpacePtr space = build_space(2, 1, 5);
    const auto f = [](double u, double v) {
      return Eigen::VectorXd::Constant(1, 1 - 2 * u + 3 * v + u * u * v * v - 0.5 * u * v);
    };
    const SplineField F(space, QuasiInterpolant(space).apply(f, 1));
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) worst = std::max(worst, std::abs(F.value(i / 40.0, j / 40.0)[0] - f(i / 40.0, j / 40.0)[0]));
    pass = pass && worst <= 1e-11;
    detail += ", reproduction " + fmt("%.1e", worst);
  }
  // L2 rate on a smooth non-polynomial function.
  {
    const auto f = [](double u, double v) { return Eigen::VectorXd::Constant(1, std::sin(3 * u) * std::exp(v)); };
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      const SpacePtr space = build_space(2, 1, n);
      const SplineField F(space, QuasiInterpolant(space).apply(f, 1));
      const ParametricMesh m(n, 5);
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
    double worst = INFINITY;
    for (size_t k = 1; k < err.size(); ++k) worst = std::min(worst, std::log2(err[k - 1] / err[k]));
    pass = pass && worst >= 2.8;
    detail += ", L2 EOC min " + fmt("%.2f", worst);
  }
  // Nonlinear Ritz on the flat patch.
  {
    const FlowProblem flat(perturbed_plane(0.0), 2, 1, 6);
    const auto init = flat.initialize();
    double dev = 0.0;
    for (int j = 0; j < flat.space().dim(); ++j)
      dev = std::max(dev, (init.ritz.normal.coeffs().row(j) - Eigen::RowVector3d(0, 0, 1)).norm());
    pass = pass && init.ritz.iterations <= 2 && dev <= 1e-12;
    detail += ", flat Ritz " + std::to_string(init.ritz.iterations) + " iterations";
  }
  // fb against the dense boundary quadrature.
  {
    const FlowProblem p(sphere_patch(kSphereExtent), 2, 1, 20);
    const SplineField nu(p.space_ptr(), p.quasi_interpolant().apply(
                                            [&](double u, double v) -> Eigen::VectorXd { return p.scenario().surface.normal(u, v); }, 3));
    const Eigen::VectorXd fb = assemble_fb(p.trace(), p.initial_position(), nu, p.boundary_data(), 3);
    const Eigen::VectorXd ref = oracle::brute_force_fb(p.trace(), p.initial_position(), nu, p.boundary_data(), 3);
    const double d = (fb - ref).cwiseAbs().maxCoeff();
    pass = pass && d <= 1e-10 && fb.norm() > 0.1;
    detail += ", fb " + fmt("%.1e", d);
  }
  return {pass, detail};
}

Verdict bdf() {
  bool pass = true;
  for (int q : {1, 2}) {
    const BdfCoefficients c = bdf_coefficients(q);
    double sd = 0.0, sg = 0.0;
    for (double d : c.delta) sd += d;
    for (double g : c.gamma) sg += g;
    pass = pass && sd == 0.0 && sg == 1.0;
  }
  const BdfCoefficients c = bdf_coefficients(2);
  pass = pass && c.delta == std::vector<double>{1.5, -2.0, 0.5} && c.gamma == std::vector<double>{2.0, -1.0};
  const double dt = 0.037, t = 1.3;
  const Eigen::Vector3d a(0.4, -1.1, 2.0), b(2.0, 0.3, -0.2), q(-0.7, 5.0, 1.5);
  const auto y = [&](double s) -> Eigen::VectorXd { return a + b * s + q * s * s; };
  const double err = (bdf_derivative(c, {y(t), y(t - dt), y(t - 2 * dt)}, dt) - (b + 2 * q * t)).cwiseAbs().maxCoeff();
  pass = pass && err <= 1e-12;
  return {pass, "sums exact, quadratic derivative error " + fmt("%.1e", err)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Verdict()>>> criteria = {
      {1, {"space dimension", dimension}},
      {2, {"sphere curvature", sphere_curvature}},
      {3, {"example 1 relaxation", example1}},
      {4, {"example 2 area decrease", example2}},
      {5, {"convergence order", convergence}},
      {6, {"constraint and boundary invariants", invariants}},
      {7, {"flat stationarity", stationarity}},
      {8, {"projector and oracle suite", oracles}},
      {9, {"BDF identities", bdf}},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [k, c] : criteria) {
    if (!selected.empty() && !selected.count(k)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d (%s): %s  [%s; %.1f s]\n", k, c.first, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
