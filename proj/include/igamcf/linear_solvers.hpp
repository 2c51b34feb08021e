#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "igamcf/assembly.hpp"

namespace igamcf {

/// Solves with relative residual above this bound raise SolverFailure.
inline constexpr double kSolverTolerance = 1e-9;

/// Sparse LDL^T factorization of a symmetric positive definite matrix.
class SpdSolver {
 public:
  explicit SpdSolver(const SparseMatrix& K, double tolerance = kSolverTolerance);
  /// Relative residual of the solve is stored in *residual when given.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double* residual = nullptr) const;

 private:
  SparseMatrix K_;
  double tolerance_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
};

/// Sparse LU of the indefinite system [K S^T; S 0].
class SaddleSolver {
 public:
  SaddleSolver(const SparseMatrix& K, const SparseMatrix& S, double tolerance = kSolverTolerance);

  struct Solution {
    Eigen::VectorXd primal;
    Eigen::VectorXd multiplier;
    double residual = 0.0;
  };
  /// Solves K x + S^T m = rhs, S x = 0.
  Solution solve(const Eigen::VectorXd& rhs) const;

 private:
  SparseMatrix system_;
  Eigen::Index primal_size_;
  double tolerance_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace igamcf
