#pragma once

#include <string>

namespace igamcf {

/// Stored calibration constants (see scenarios.hpp for how they are derived).
inline constexpr double kPlaneAmplitude = 0.1342969710427302;
inline constexpr double kSphereExtent = 1.3936441282358034;

/// Run configuration. Text form: one `key = value` per line, `#` starts a
/// comment, keys exactly the member names below; unknown or repeated keys are
/// errors, missing keys keep their defaults.
struct ScenarioConfig {
  std::string scenario = "perturbed_plane";
  int degree = 2;
  int smoothness = 1;
  int elements_per_side = 20;
  double dt = 0.0015625;
  double t_final = 0.8;
  int bdf_order = 2;
  /// Snapshot every k-th step; 0 disables snapshots.
  int snapshot_stride = 0;
  std::string output_dir = "output";
  double perturbation_amplitude = kPlaneAmplitude;
  double patch_polar_extent = kSphereExtent;
  double ritz_lambda = 10.0;
  double ritz_fp_tol = 1e-12;
  int ritz_fp_max_iter = 100;
  double ritz_lambda_growth = 4.0;
  double solver_tolerance = 1e-9;
  /// Multiplier rows at patch corners: "split" (one row per edge) or "shared".
  std::string corner_constraints = "split";
  int vtk_resolution = 2;
  bool vtk_xml = false;
};

/// Throws ConfigError on syntax errors, unknown keys or invalid values.
ScenarioConfig parse_config(const std::string& text);
/// Throws IoError if the file cannot be read.
ScenarioConfig load_config(const std::string& path);
/// Canonical text: every key in declaration order, reals with 17 significant digits.
std::string serialize_config(const ScenarioConfig& cfg);
/// Throws ConfigError when a value is out of range.
void validate(const ScenarioConfig& cfg);

}  // namespace igamcf
