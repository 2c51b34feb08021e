// igamcf: mean curvature flow of spline surfaces with a fixed boundary curve.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "igamcf/config.hpp"
#include "igamcf/convergence.hpp"
#include "igamcf/errors.hpp"
#include "igamcf/flow_solver.hpp"
#include "igamcf/output.hpp"
#include "igamcf/parallel.hpp"
#include "igamcf/scenarios.hpp"

namespace fs = std::filesystem;
using namespace igamcf;

namespace {

RitzConfig ritz_of(const ScenarioConfig& c) {
  return {c.ritz_lambda, c.ritz_fp_tol, c.ritz_fp_max_iter, c.ritz_lambda_growth};
}

std::string snapshot_name(int index, bool xml) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "surface_%05d.%s", index, xml ? "vtu" : "vtk");
  return buf;
}

int solve(ScenarioConfig cfg, int snapshot_stride, bool dump) {
  if (snapshot_stride >= 0) cfg.snapshot_stride = snapshot_stride;
  validate(cfg);
  const fs::path out = cfg.output_dir;
  fs::create_directories(out);
  write_text((out / "config.ini").string(), serialize_config(cfg));

  const FlowProblem problem(make_scenario(cfg), cfg.degree, cfg.smoothness, cfg.elements_per_side, ritz_of(cfg),
                            cfg.solver_tolerance, parse_corner_constraint(cfg.corner_constraints));
  RunOptions opt;
  opt.dt = cfg.dt;
  opt.t_final = cfg.t_final;
  opt.bdf_order = cfg.bdf_order;
  if (dump) opt.dump_matrices_dir = (out / "matrices").string();
  int step = 0;
  opt.on_step = [&](const FlowState& s, const StepDiagnostics& d) {
    if (cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0)
      write_vtk((out / snapshot_name(step, cfg.vtk_xml)).string(), problem, s, cfg.vtk_resolution, cfg.vtk_xml);
    std::printf("step %5d  t=%-10.6g area=%.10f  max|kappa|=%.4e  |S nu|=%.2e\n", step, d.time, d.area,
                d.max_abs_kappa, d.constraint_residual);
    ++step;
  };
  const RunResult res = run(problem, opt);
  write_diagnostics_csv((out / "diagnostics.csv").string(), res.diagnostics);
  write_text((out / "final_state.json").string(), state_json(res.final_state));
  write_vtk((out / (cfg.vtk_xml ? "final.vtu" : "final.vtk")).string(), problem, res.final_state, cfg.vtk_resolution,
            cfg.vtk_xml);
  if (res.aborted) {
    write_text((out / "last_good_state.json").string(), state_json(res.final_state));
    std::cerr << "run aborted at t=" << res.final_state.time << ": " << res.abort_reason << "\n"
              << "last good state written to " << (out / "last_good_state.json").string() << "\n";
    return 2;
  }
  std::printf("Ritz initialization: %d iterations, lambda=%g\n", res.ritz.iterations, res.ritz.lambda);
  return 0;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad level '" + tok + "' in --levels");
    }
  }
  return out;
}

int converge(const ScenarioConfig& cfg, const std::string& levels, double t_final) {
  const ConvergenceReport rep = convergence_study(cfg, parse_levels(levels), t_final);
  const fs::path path = fs::path(cfg.output_dir) / "convergence.json";
  write_text(path.string(), report_json(rep));
  std::printf("%-10s %-3s %s\n", "variable", "", "EOC (pairwise) | fitted");
  for (const char* var : {"position", "curvature", "normal"})
    for (bool h1 : {false, true}) {
      const auto r = rep.rate(var, h1);
      std::printf("%-10s %-3s", var, h1 ? "H1" : "L2");
      for (double e : r.pairwise) std::printf(" %.3f", e);
      std::printf(" | %.3f\n", r.fitted);
    }
  std::printf("report written to %s\n", path.string().c_str());
  return 0;
}

int calibrate(const std::string& scenario) {
  if (scenario == "perturbed_plane") {
    const double a = calibrate_plane_amplitude();
    std::printf("perturbation_amplitude = %.17g\n", a);
    std::printf("# discrete initial area at N=20, p=2, l=1: %.10f\n",
                discrete_initial_area(perturbed_plane(a), 2, 1, 20));
  } else if (scenario == "sphere_patch") {
    const double b = calibrate_sphere_extent();
    std::printf("patch_polar_extent = %.17g\n", b);
    std::printf("# analytic area %.10f, discrete initial area at N=20, p=2, l=1: %.10f\n", sphere_patch_area(b),
                discrete_initial_area(sphere_patch(b), 2, 1, 20));
  } else {
    throw ConfigError("no calibration for scenario '" + scenario + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isogeometric BDF2 mean curvature flow with fixed boundary"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for element loops")->check(CLI::PositiveNumber);

  std::string config_path;
  int snapshot_stride = -1;
  bool dump = false;
  auto* solve_cmd = app.add_subcommand("solve", "Run one flow from a config file");
  solve_cmd->add_option("--config", config_path, "Config file")->required();
  solve_cmd->add_option("--snapshot-stride", snapshot_stride, "Override snapshot_stride")->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--dump-matrices", dump, "Write per-step matrices in MatrixMarket format");

  std::string levels = "4,8,16,32";
  double t_final = 0.05;
  auto* conv_cmd = app.add_subcommand("converge", "Self-convergence study against the finest level");
  conv_cmd->add_option("--config", config_path, "Config file")->required();
  conv_cmd->add_option("--levels", levels, "Comma-separated elements per side");
  conv_cmd->add_option("--t-final", t_final, "Final time of every level");

  std::string scenario;
  auto* cal_cmd = app.add_subcommand("calibrate", "Re-derive a stored calibration constant");
  cal_cmd->add_option("--scenario", scenario, "perturbed_plane or sphere_patch")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    set_thread_count(threads);
    if (*solve_cmd) return solve(load_config(config_path), snapshot_stride, dump);
    if (*conv_cmd) return converge(load_config(config_path), levels, t_final);
    if (*cal_cmd) return calibrate(scenario);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
