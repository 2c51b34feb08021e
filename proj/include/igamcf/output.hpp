#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "igamcf/convergence.hpp"
#include "igamcf/flow_solver.hpp"

namespace igamcf {

inline constexpr const char* kDiagnosticsHeader = "t,area,max_abs_kappa,constraint_residual,solver_residual,wallclock_s";

/// Header plus one row per entry; reals with 17 significant digits.
/// solver_residual is the largest relative residual of the step's solves.
std::string diagnostics_csv(const std::vector<StepDiagnostics>& rows);
void write_diagnostics_csv(const std::string& path, const std::vector<StepDiagnostics>& rows);
/// Inverse of diagnostics_csv (solver_residuals get the single stored value).
std::vector<StepDiagnostics> parse_diagnostics_csv(const std::string& text);

/// Surface sampled on a uniform (rN+1)^2 parametric grid, u fastest.
struct SurfaceSamples {
  int per_side = 0;  // rN + 1
  Eigen::MatrixXd points;    // 3 x count
  Eigen::VectorXd kappa;
  Eigen::MatrixXd normal;    // 3 x count
  Eigen::MatrixXd velocity;  // 3 x count
};
SurfaceSamples sample_surface(const FlowProblem& problem, const FlowState& state, int resolution);

/// Legacy ASCII unstructured grid (quads) or, with xml, a .vtu file; point data
/// arrays "kappa", "nu" and "velocity".
std::string vtk_legacy(const SurfaceSamples& s, const std::string& title);
std::string vtk_xml(const SurfaceSamples& s);
void write_vtk(const std::string& path, const FlowProblem& problem, const FlowState& state, int resolution,
               bool xml = false);

std::string state_json(const FlowState& s);
FlowState parse_state_json(const std::string& text);
std::string report_json(const ConvergenceReport& r);

/// Writes text to path, creating parent directories; IoError carries the path.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace igamcf
