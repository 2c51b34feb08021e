#pragma once

#include <string>
#include <vector>

#include "igamcf/config.hpp"
#include "igamcf/spline_field.hpp"

namespace igamcf {

/// L2 and full H1 norms of a - b on the parametric domain.
struct FieldDifference {
  double l2 = 0.0;
  double h1 = 0.0;
};
/// Both fields must live on nested spaces; the integral uses `points` Gauss
/// points per direction on the elements of the finer of the two meshes, where
/// both differences are polynomial.
FieldDifference parametric_difference(const SplineField& a, const SplineField& b, int points);

struct LevelErrors {
  int elements = 0;
  double dt = 0.0;
  FieldDifference position;
  FieldDifference curvature;
  FieldDifference normal;
};

struct ConvergenceReport {
  std::string scenario;
  int degree = 0;
  int smoothness = 0;
  double t_final = 0.0;
  std::vector<int> levels;
  /// One entry per level except the finest, which is the reference.
  std::vector<LevelErrors> errors;

  struct Rates {
    std::vector<double> pairwise;  // log2(e_k / e_{k+1})
    double fitted = 0.0;           // least-squares slope of log e against log h
  };
  Rates rate(const std::string& variable, bool h1) const;
};

/// Runs base (scenario, degree, smoothness) on every level to t_final with
/// dt = t_final / N and measures errors against the finest level.
ConvergenceReport convergence_study(const ScenarioConfig& base, const std::vector<int>& levels,
                                    double t_final = 0.05);

}  // namespace igamcf
