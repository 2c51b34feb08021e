#pragma once

#include <Eigen/Dense>

#include <functional>

#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"

namespace igamcf {

using Matrix32 = Eigen::Matrix<double, 3, 2>;

/// det G at or below this value is treated as a collapsed parameterization.
inline constexpr double kDegenerateTolerance = 1e-14;

/// First-order geometry of a parameterized surface at one parametric point.
struct GeometrySample {
  Eigen::Vector2d param = Eigen::Vector2d::Zero();
  Matrix32 jacobian = Matrix32::Zero();
  Eigen::Matrix2d metric = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d metric_inv = Eigen::Matrix2d::Zero();
  double area_element = 0.0;
  /// X_u x X_v, normalized.
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  /// jacobian * metric_inv: maps parametric gradients to surface gradients.
  Matrix32 pushforward = Matrix32::Zero();
};

/// Throws DegenerateSurface if det G <= kDegenerateTolerance.
GeometrySample make_sample(const Matrix32& jacobian, const Eigen::Vector2d& param);
GeometrySample geometry_at(const SplineField& X, double u, double v);

/// Surface gradient of a scalar from its parametric gradient.
inline Eigen::Vector3d surface_gradient(const Eigen::Vector2d& param_gradient, const GeometrySample& s) {
  return s.pushforward * param_gradient;
}
/// Rows are the surface gradients of the components (D x 3).
Eigen::MatrixXd surface_gradient(const Eigen::MatrixXd& param_jacobian, const GeometrySample& s);
Eigen::MatrixXd surface_gradient(const SplineField& f, const GeometrySample& s);

struct Weingarten {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  double frob_sq = 0.0;
  double trace = 0.0;
};
/// A = surface gradient of a (not necessarily unit) normal field.
Weingarten weingarten(const Eigen::MatrixXd& normal_param_jacobian, const GeometrySample& s);
Weingarten weingarten(const SplineField& nu, const GeometrySample& s);

/// Frame of the boundary curve on one edge. mu = nu x tau points outward.
struct BoundaryFrame {
  double arc_param = 0.0;
  Eigen::Vector3d tangent = Eigen::Vector3d::Zero();
  Eigen::Vector3d curvature_vector = Eigen::Vector3d::Zero();
  Eigen::Vector3d conormal = Eigen::Vector3d::Zero();
  double length_element = 0.0;
};

/// Frame from the first and second edge-parameter derivatives of the boundary curve.
BoundaryFrame frame_from_edge_derivatives(const Eigen::Vector3d& d1, const Eigen::Vector3d& d2, double orientation,
                                          const Eigen::Vector3d& nu, double s);
BoundaryFrame boundary_frame(const SplineField& X, const Eigen::Vector3d& nu, Edge edge, double s);

/// Sum of q * w over the mesh quadrature.
double surface_area(const SplineField& X, const ParametricMesh& mesh);

/// A surface over the unit square known through its parametric Jacobian.
/// Used for integrals over surfaces other than the current discrete one.
struct ParametricSurface {
  std::function<Matrix32(double, double)> jacobian;
};
/// A pulled-back function with its parametric Jacobian (D x 2).
struct ParametricField {
  int components = 1;
  std::function<Eigen::VectorXd(double, double)> value;
  std::function<Eigen::MatrixXd(double, double)> gradient;
};
/// Oriented tangent, curvature vector and length element of a boundary curve.
struct EdgeGeometry {
  Eigen::Vector3d tangent;
  Eigen::Vector3d curvature;
  double length_element;
};
struct ParametricBoundary {
  std::function<EdgeGeometry(Edge, double)> at;
};

ParametricSurface as_parametric_surface(const SplineField& X);
ParametricField as_parametric_field(const SplineField& f);

}  // namespace igamcf
