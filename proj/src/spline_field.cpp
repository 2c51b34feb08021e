#include "igamcf/spline_field.hpp"

#include "igamcf/errors.hpp"

namespace igamcf {

SplineField::SplineField(SpacePtr space, int components)
    : space_(std::move(space)), coeffs_(Eigen::MatrixXd::Zero(space_->dim(), components)) {}

SplineField::SplineField(SpacePtr space, Eigen::MatrixXd coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != space_->dim())
    throw InvalidArgument("coefficient count does not match the spline space dimension");
}

SplineField SplineField::from_flat(SpacePtr space, int components, const Eigen::VectorXd& flat) {
  const int n = space->dim();
  if (flat.size() != static_cast<Eigen::Index>(n) * components)
    throw InvalidArgument("flat coefficient vector has the wrong length");
  return SplineField(space, Eigen::Map<const Eigen::MatrixXd>(flat.data(), n, components));
}

Eigen::VectorXd SplineField::flat() const { return Eigen::Map<const Eigen::VectorXd>(coeffs_.data(), coeffs_.size()); }

Eigen::VectorXd SplineField::value(double u, double v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(components());
  for (const auto& b : space_->eval_basis(u, v, 0)) out += b.value * coeffs_.row(b.index).transpose();
  return out;
}

Eigen::MatrixXd SplineField::gradient(double u, double v) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(components(), 2);
  for (const auto& b : space_->eval_basis(u, v, 1)) out += coeffs_.row(b.index).transpose() * b.gradient.transpose();
  return out;
}

SplineField::Jet SplineField::jet(double u, double v) const {
  Jet j{Eigen::VectorXd::Zero(components()), Eigen::MatrixXd::Zero(components(), 2),
        Eigen::MatrixXd::Zero(components(), 3)};
  for (const auto& b : space_->eval_basis(u, v, 2)) {
    const Eigen::VectorXd c = coeffs_.row(b.index).transpose();
    j.value += b.value * c;
    j.gradient += c * b.gradient.transpose();
    j.second.col(0) += b.hessian(0, 0) * c;
    j.second.col(1) += b.hessian(0, 1) * c;
    j.second.col(2) += b.hessian(1, 1) * c;
  }
  return j;
}

SplineField extend_zero_trace(SpacePtr space, const Eigen::VectorXd& interior_coeffs) {
  if (interior_coeffs.size() != space->num_interior())
    throw InvalidArgument("interior coefficient vector has the wrong length");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(space->dim(), 1);
  const auto& interior = space->interior_indices();
  for (size_t k = 0; k < interior.size(); ++k) c(interior[k], 0) = interior_coeffs[k];
  return SplineField(std::move(space), std::move(c));
}

Eigen::VectorXd interior_part(const SplineField& field) {
  const auto& interior = field.space().interior_indices();
  Eigen::VectorXd out(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) out[k] = field.coeffs()(interior[k], 0);
  return out;
}

SplineField apply_quasi_interpolant(const QuasiInterpolant& Q,
                                    const std::function<Eigen::VectorXd(double, double)>& f, int components,
                                    BoundaryMode mode) {
  return SplineField(Q.space_ptr(), Q.apply(f, components, mode));
}

}  // namespace igamcf
