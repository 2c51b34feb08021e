#pragma once

#include <Eigen/Dense>

#include <functional>

#include "igamcf/surface_geometry.hpp"

namespace igamcf {

/// Position and first/second parametric derivatives of a smooth map.
struct SurfaceJet {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  Eigen::Vector3d xu = Eigen::Vector3d::Zero();
  Eigen::Vector3d xv = Eigen::Vector3d::Zero();
  Eigen::Vector3d xuu = Eigen::Vector3d::Zero();
  Eigen::Vector3d xuv = Eigen::Vector3d::Zero();
  Eigen::Vector3d xvv = Eigen::Vector3d::Zero();
};

/// Jet of P / |P| from the jet of P.
SurfaceJet normalize_jet(const SurfaceJet& p);

/// A smooth parameterized surface X0 : [0,1]^2 -> R^3 given by its 2-jet.
/// Normal, Weingarten map, mean curvature and the boundary frame follow from
/// the jet, with the same orientation conventions as the discrete geometry.
class AnalyticSurface {
 public:
  explicit AnalyticSurface(std::function<SurfaceJet(double, double)> jet) : jet_(std::move(jet)) {}

  SurfaceJet jet(double u, double v) const { return jet_(u, v); }
  Eigen::Vector3d position(double u, double v) const { return jet_(u, v).x; }
  Matrix32 jacobian(double u, double v) const;
  Eigen::Vector3d normal(double u, double v) const;
  /// Parametric derivatives of nu0 o X0.
  Matrix32 normal_jacobian(double u, double v) const;
  Weingarten weingarten(double u, double v) const;
  double mean_curvature(double u, double v) const { return weingarten(u, v).trace; }
  EdgeGeometry edge(Edge edge, double s) const;

  ParametricSurface as_parametric() const;
  ParametricField normal_field() const;
  ParametricBoundary boundary() const;

 private:
  std::function<SurfaceJet(double, double)> jet_;
};

}  // namespace igamcf
