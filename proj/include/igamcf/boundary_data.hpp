#pragma once

#include <Eigen/Dense>

#include <array>

#include "igamcf/spline_spaces.hpp"

namespace igamcf {

/// Boundary splines of the initial surface, one coefficient block per edge
/// (n_edge x 3, edge-local ordering): the approximate unit tangent tau_h and
/// curvature vector kappa_partial_h. Fixed for the whole evolution.
struct BoundaryData {
  std::array<Eigen::MatrixXd, 4> tangent;
  std::array<Eigen::MatrixXd, 4> curvature;

  const Eigen::MatrixXd& tangent_on(Edge e) const { return tangent[static_cast<int>(e)]; }
  const Eigen::MatrixXd& curvature_on(Edge e) const { return curvature[static_cast<int>(e)]; }
};

}  // namespace igamcf
