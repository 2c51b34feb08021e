#include "igamcf/convergence.hpp"

#include <cmath>

#include "igamcf/errors.hpp"
#include "igamcf/flow_solver.hpp"
#include "igamcf/scenarios.hpp"

namespace igamcf {

FieldDifference parametric_difference(const SplineField& a, const SplineField& b, int points) {
  if (a.components() != b.components()) throw InvalidArgument("fields have different component counts");
  const int na = a.space().num_elements(), nb = b.space().num_elements();
  const int ne = std::max(na, nb);
  if (ne % std::min(na, nb) != 0) throw InvalidArgument("fields are not on nested meshes");
  const ParametricMesh mesh(ne, points);
  double l2 = 0.0, semi = 0.0;
  for (int e2 = 0; e2 < ne; ++e2)
    for (int e1 = 0; e1 < ne; ++e1)
      for (int q2 = 0; q2 < points; ++q2)
        for (int q1 = 0; q1 < points; ++q1) {
          const double u = mesh.node(e1, q1), v = mesh.node(e2, q2), w = mesh.weight(q1, q2);
          l2 += w * (a.value(u, v) - b.value(u, v)).squaredNorm();
          semi += w * (a.gradient(u, v) - b.gradient(u, v)).squaredNorm();
        }
  return {std::sqrt(l2), std::sqrt(l2 + semi)};
}

ConvergenceReport::Rates ConvergenceReport::rate(const std::string& variable, bool h1) const {
  auto pick = [&](const LevelErrors& e) {
    const FieldDifference& d = variable == "position"    ? e.position
                               : variable == "curvature" ? e.curvature
                               : variable == "normal"    ? e.normal
                                                         : throw InvalidArgument("unknown variable " + variable);
    return h1 ? d.h1 : d.l2;
  };
  Rates r;
  for (size_t k = 0; k + 1 < errors.size(); ++k)
    r.pairwise.push_back(std::log2(pick(errors[k]) / pick(errors[k + 1])) /
                         std::log2(double(errors[k + 1].elements) / errors[k].elements));
  // Slope of log e against log(1/N).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(errors.size());
  for (const auto& e : errors) {
    const double x = -std::log(double(e.elements)), y = std::log(pick(e));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  if (errors.size() >= 2) r.fitted = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return r;
}

ConvergenceReport convergence_study(const ScenarioConfig& base, const std::vector<int>& levels, double t_final) {
  if (levels.size() < 3) throw InvalidArgument("a convergence study needs at least 3 levels");
  for (size_t k = 1; k < levels.size(); ++k)
    if (levels[k] <= levels[k - 1] || levels[k] % levels[k - 1] != 0)
      throw InvalidArgument("levels must be strictly refining and nested");

  struct Final {
    SplineField x, kappa, nu;
  };
  std::vector<Final> finals;
  std::vector<double> dts;
  const Scenario scenario = make_scenario(base);
  const RitzConfig ritz{base.ritz_lambda, base.ritz_fp_tol, base.ritz_fp_max_iter, base.ritz_lambda_growth};
  for (int n : levels) {
    const FlowProblem problem(scenario, base.degree, base.smoothness, n, ritz, base.solver_tolerance,
                              parse_corner_constraint(base.corner_constraints));
    RunOptions opt;
    opt.dt = t_final / n;
    opt.t_final = t_final;
    opt.bdf_order = base.bdf_order;
    const RunResult res = run(problem, opt);
    if (res.aborted) throw SolverFailure("level N=" + std::to_string(n) + " aborted: " + res.abort_reason);
    finals.push_back({problem.position(res.final_state), problem.curvature(res.final_state),
                      problem.normal(res.final_state)});
    dts.push_back(opt.dt);
  }

  ConvergenceReport rep;
  rep.scenario = base.scenario;
  rep.degree = base.degree;
  rep.smoothness = base.smoothness;
  rep.t_final = t_final;
  rep.levels = levels;
  const Final& ref = finals.back();
  const int points = base.degree + 3;
  for (size_t k = 0; k + 1 < finals.size(); ++k) {
    LevelErrors e;
    e.elements = levels[k];
    e.dt = dts[k];
    e.position = parametric_difference(finals[k].x, ref.x, points);
    e.curvature = parametric_difference(finals[k].kappa, ref.kappa, points);
    e.normal = parametric_difference(finals[k].nu, ref.nu, points);
    rep.errors.push_back(e);
  }
  return rep;
}

}  // namespace igamcf
