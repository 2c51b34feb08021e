#include "igamcf/linear_solvers.hpp"

#include <string>
#include <vector>

#include "igamcf/errors.hpp"

namespace igamcf {

namespace {

double relative_residual(const SparseMatrix& K, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double bn = b.norm();
  const double rn = (K * x - b).norm();
  return bn > 0.0 ? rn / bn : rn;
}

void require(double residual, double tolerance, const char* what) {
  if (!(residual <= tolerance))
    throw SolverFailure(std::string(what) + ": relative residual " + std::to_string(residual));
}

}  // namespace

SpdSolver::SpdSolver(const SparseMatrix& K, double tolerance) : K_(K), tolerance_(tolerance) {
  ldlt_.compute(K_);
  if (ldlt_.info() != Eigen::Success) throw SolverFailure("LDL^T factorization failed");
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs, double* residual) const {
  Eigen::VectorXd x = ldlt_.solve(rhs);
  const double r = relative_residual(K_, x, rhs);
  require(r, tolerance_, "SPD solve");
  if (residual) *residual = r;
  return x;
}

SaddleSolver::SaddleSolver(const SparseMatrix& K, const SparseMatrix& S, double tolerance)
    : primal_size_(K.rows()), tolerance_(tolerance) {
  if (K.rows() != K.cols() || S.cols() != K.cols()) throw InvalidArgument("saddle blocks have mismatched sizes");
  const Eigen::Index n = K.rows();
  const Eigen::Index m = S.rows();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(K.nonZeros() + 2 * S.nonZeros());
  for (int k = 0; k < K.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(K, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < S.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(S, k); it; ++it) {
      t.emplace_back(n + it.row(), it.col(), it.value());
      t.emplace_back(it.col(), n + it.row(), it.value());
    }
  }
  system_.resize(n + m, n + m);
  system_.setFromTriplets(t.begin(), t.end());
  system_.makeCompressed();
  lu_.analyzePattern(system_);
  lu_.factorize(system_);
  if (lu_.info() != Eigen::Success) throw SolverFailure("saddle-point LU factorization failed: " + lu_.lastErrorMessage());
}

SaddleSolver::Solution SaddleSolver::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(system_.rows());
  b.head(primal_size_) = rhs;
  const Eigen::VectorXd x = lu_.solve(b);
  Solution s;
  s.residual = relative_residual(system_, x, b);
  require(s.residual, tolerance_, "saddle-point solve");
  s.primal = x.head(primal_size_);
  s.multiplier = x.tail(system_.rows() - primal_size_);
  return s;
}

}  // namespace igamcf
