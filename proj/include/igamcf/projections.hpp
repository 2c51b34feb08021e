#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "igamcf/assembly.hpp"
#include "igamcf/boundary_data.hpp"
#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"
#include "igamcf/surface_geometry.hpp"

namespace igamcf {

/// Function on the discrete surface, evaluated through its pullback:
/// g(x, u, v) with x = X(u, v).
using SurfaceFunction = std::function<Eigen::VectorXd(const Eigen::Vector3d&, double, double)>;

/// Q applied to g o X.
SplineField surface_quasi_interp(const QuasiInterpolant& Q, const SplineField& X, const SurfaceFunction& g,
                                 int components, BoundaryMode mode = BoundaryMode::keep);

/// Per-edge univariate quasi-interpolation of the exact boundary tangent and
/// curvature vector of the initial surface.
BoundaryData boundary_quasi_interp(const BoundaryTrace& trace, const ParametricBoundary& exact);

/// v_h = Q(-kappa_h nu_h) with every boundary coefficient set to 0.
/// `kappa` is a full-space scalar field.
SplineField project_velocity(const QuasiInterpolant& Q, const SplineField& kappa, const SplineField& nu);

/// Rows: basis functions; columns: components of u.
/// load(i, d) = int_src grad u_d . grad b_i + mass_weight * u_d b_i, with the
/// integral over the surface `src` and a Gauss rule of `points` per direction.
Eigen::MatrixXd source_h1_load(const TensorSplineSpace& space, const ParametricSurface& src,
                               const ParametricField& u, double mass_weight, int points);

/// Zero-trace Ritz projection: w in S_h0 with
/// (grad w, grad eta) + (w, eta) on Gamma_h = (grad u, grad eta) + (u, eta) on src
/// for every zero-trace basis function eta. Returns a full-space field whose
/// boundary coefficients are 0.
SplineField linear_ritz_zero_trace(const SplineField& X, const ParametricSurface& src, const ParametricField& u);

struct RitzConfig {
  double lambda = 10.0;
  double fp_tol = 1e-12;
  int fp_max_iter = 100;
  double lambda_growth = 4.0;
  /// Increments must decrease over this many leading iterations.
  int contraction_window = 10;
  int max_escalations = 8;
};

struct RitzResult {
  SplineField normal;
  Eigen::VectorXd multiplier;
  int iterations = 0;
  double lambda = 0.0;
  /// H1(Gamma_h0) norms of successive fixed-point increments at the final lambda.
  std::vector<double> increments;
};

/// Nonlinear Ritz projection of the exact normal into the constrained space
/// { w : S w = 0 }: the fixed point of
///   a(w+, phi) + lambda m(w+, phi) + <S^T mult, phi>
///     = a_src(u, phi) + lambda m_src(u, phi) - b_src(u; phi) + b_h(w; phi),
/// b(w; phi) = int_{dGamma} (w . kappa_partial)(w x tau) . phi,
/// started from the constrained L2 projection of Q u. lambda is multiplied by
/// lambda_growth whenever the increments stop contracting.
RitzResult nonlinear_ritz_normal(const SplineField& X0, const BoundaryTrace& trace, const SparseMatrix& S,
                                 const BoundaryData& bd, const QuasiInterpolant& Q, const ParametricSurface& src,
                                 const ParametricBoundary& src_boundary, const ParametricField& u,
                                 const RitzConfig& cfg = {});

}  // namespace igamcf
