#pragma once

#include <Eigen/Dense>

#include "igamcf/spline_spaces.hpp"

namespace igamcf {

/// Coefficients over a tensor spline space for a scalar (D = 1) or
/// vector (D = 3) spline function. Stored N x D; flat() lays components out
/// in consecutive blocks of N, matching I_D (x) M ordering.
class SplineField {
 public:
  /// Empty field without a space; only assignable.
  SplineField() = default;
  SplineField(SpacePtr space, int components);
  SplineField(SpacePtr space, Eigen::MatrixXd coeffs);

  static SplineField from_flat(SpacePtr space, int components, const Eigen::VectorXd& flat);

  const TensorSplineSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int components() const { return static_cast<int>(coeffs_.cols()); }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }
  Eigen::MatrixXd& coeffs() { return coeffs_; }
  Eigen::VectorXd flat() const;

  Eigen::VectorXd value(double u, double v) const;
  /// D x 2 parametric Jacobian.
  Eigen::MatrixXd gradient(double u, double v) const;
  /// Value, parametric Jacobian and the three second derivatives (uu, uv, vv), each D-vectors.
  struct Jet {
    Eigen::VectorXd value;
    Eigen::MatrixXd gradient;
    Eigen::MatrixXd second;  // D x 3: uu, uv, vv
  };
  Jet jet(double u, double v) const;

 private:
  SpacePtr space_;
  Eigen::MatrixXd coeffs_;
};

/// Expands coefficients over interior_indices() to a full-space scalar field (boundary zeros).
SplineField extend_zero_trace(SpacePtr space, const Eigen::VectorXd& interior_coeffs);
/// Restricts a scalar field to its interior coefficients.
Eigen::VectorXd interior_part(const SplineField& field);

/// Q applied to a pointwise-evaluable function f : [0,1]^2 -> R^D.
SplineField apply_quasi_interpolant(const QuasiInterpolant& Q,
                                    const std::function<Eigen::VectorXd(double, double)>& f, int components,
                                    BoundaryMode mode = BoundaryMode::keep);

}  // namespace igamcf
