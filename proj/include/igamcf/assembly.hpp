#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>

#include "igamcf/boundary_data.hpp"
#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"
#include "igamcf/surface_geometry.hpp"

namespace igamcf {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Surface mass and stiffness matrices on Gamma_h = X(Omega), full space and
/// zero-trace restriction (rows/columns of interior_indices()).
struct MassStiffness {
  SparseMatrix mass;
  SparseMatrix stiffness;
  SparseMatrix mass_zero_trace;
  SparseMatrix stiffness_zero_trace;
};

MassStiffness assemble_mass_stiffness(const SplineField& X, const ParametricMesh& mesh);

/// P K P^T with P selecting interior_indices().
SparseMatrix restrict_to_interior(const SparseMatrix& K, const TensorSplineSpace& space);
/// I_3 (x) K.
SparseMatrix block_diagonal3(const SparseMatrix& K);

/// Multiplier rows of the orthogonality constraint. shared: one row per
/// boundary trace DOF, so a corner function tests both of its edges at once.
/// split: one row per edge-local DOF, so each edge tests its corner functions
/// separately and the corner normal is held orthogonal to both tangents.
enum class CornerConstraint { shared, split };

/// "split" or "shared"; throws InvalidArgument otherwise.
CornerConstraint parse_corner_constraint(const std::string& name);

/// Number of rows of the constraint matrix.
int constraint_rows(const BoundaryTrace& trace, CornerConstraint corners);

/// Orthogonality constraint [S^1 S^2 S^3]: rows over the multiplier DOFs,
/// columns over the 3N flat normal coefficients. Entry
/// S^k_ij = int b_i b_j (tau_h / |tau_h|)_k over dGamma_h0 (shared) or over
/// the edge owning row i (split), with tau_h normalized pointwise at the
/// quadrature points.
SparseMatrix assemble_constraint_S(const BoundaryTrace& trace, const SplineField& X0, const BoundaryData& bd,
                                   int points, CornerConstraint corners = CornerConstraint::split);

/// f1_i = int |A_h|^2 kappa_h b_i over interior basis functions (length N0).
/// `kappa` is a full-space scalar field (boundary coefficients zero).
Eigen::VectorXd assemble_f1(const SplineField& X, const SplineField& kappa, const SplineField& nu,
                            const ParametricMesh& mesh);

/// f2_(k,i) = int |A_h|^2 (nu_h)_k b_i, flat 3N layout.
Eigen::VectorXd assemble_f2(const SplineField& X, const SplineField& nu, const ParametricMesh& mesh);

/// fb_(k,i) = int_{dGamma_h0} (nu_h . kappa_partial_h) (nu_h x tau_h)_k b_i, flat 3N layout.
/// The boundary curve is read from X (its boundary coefficients never change).
Eigen::VectorXd assemble_fb(const BoundaryTrace& trace, const SplineField& X, const SplineField& nu,
                            const BoundaryData& bd, int points);

struct NormalLoads {
  Eigen::VectorXd f2;
  Eigen::VectorXd fb;
};
NormalLoads assemble_f2_fb(const BoundaryTrace& trace, const SplineField& X, const SplineField& nu,
                           const BoundaryData& bd, const ParametricMesh& mesh, int boundary_points);

/// Writes a matrix in MatrixMarket coordinate format.
void write_matrix_market(const std::string& path, const SparseMatrix& K);

}  // namespace igamcf
