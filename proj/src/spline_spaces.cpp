#include "igamcf/spline_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "igamcf/errors.hpp"

namespace igamcf {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Tricomi approximation of the i-th root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    // Ascending order on [0, 1].
    rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

UnivariateSpline::UnivariateSpline(int degree, int smoothness, int num_elements)
    : degree_(degree), smoothness_(smoothness), num_elements_(num_elements) {
  if (degree < 2) throw InvalidArgument("spline degree must be >= 2, got " + std::to_string(degree));
  if (smoothness < 0 || smoothness >= degree)
    throw InvalidArgument("smoothness must satisfy 0 <= l <= p-1, got l=" + std::to_string(smoothness));
  if (num_elements < 1) throw InvalidArgument("need at least one element, got " + std::to_string(num_elements));
  multiplicity_ = degree - smoothness;
  dim_ = num_elements * multiplicity_ + smoothness + 1;
  knots_.assign(degree + 1, 0.0);
  for (int i = 1; i < num_elements; ++i)
    for (int r = 0; r < multiplicity_; ++r) knots_.push_back(static_cast<double>(i) / num_elements);
  knots_.insert(knots_.end(), degree + 1, 1.0);
}

int UnivariateSpline::element_of(double x) const {
  const int e = static_cast<int>(std::floor(x * num_elements_));
  return std::clamp(e, 0, num_elements_ - 1);
}

std::pair<int, int> UnivariateSpline::support(int basis) const {
  const int lo = std::max(0, (basis - degree_ + multiplicity_ - 1) / multiplicity_);
  const int hi = std::min(num_elements_ - 1, basis / multiplicity_);
  return {lo, hi};
}

Eigen::MatrixXd UnivariateSpline::evaluate(int element, double x, int num_derivatives) const {
  // Derivatives of the nonzero B-splines on one knot span (Piegl & Tiller, A2.3).
  const int p = degree_;
  const int span = p + element * multiplicity_;
  const auto& U = knots_;
  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  const int n = num_derivatives;
  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(n + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);
  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a.setZero();
    a(0, 0) = 1.0;
    for (int k = 1; k <= std::min(n, p); ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= std::min(n, p); ++k) {
    ders.row(k) *= factor;
    factor *= (p - k);
  }
  return ders;
}

TensorSplineSpace::TensorSplineSpace(int degree, int smoothness, int num_elements)
    : u_(degree, smoothness, num_elements), v_(degree, smoothness, num_elements) {
  const int n = dim();
  interior_position_.assign(n, -1);
  boundary_position_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    const auto [i1, i2] = pair_index(j);
    const bool on_boundary = i1 == 0 || i1 == u_.dim() - 1 || i2 == 0 || i2 == v_.dim() - 1;
    if (on_boundary) {
      boundary_position_[j] = static_cast<int>(boundary_.size());
      boundary_.push_back(j);
    } else {
      interior_position_[j] = static_cast<int>(interior_.size());
      interior_.push_back(j);
    }
  }
}

std::vector<int> TensorSplineSpace::element_dofs(int e1, int e2) const {
  const int p = degree();
  std::vector<int> dofs;
  dofs.reserve(local_count());
  const int f1 = u_.first_active(e1);
  const int f2 = v_.first_active(e2);
  for (int b = 0; b <= p; ++b)
    for (int a = 0; a <= p; ++a) dofs.push_back(flat_index(f1 + a, f2 + b));
  return dofs;
}

std::vector<BasisValue> TensorSplineSpace::eval_basis(double u, double v, int deriv_order) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw InvalidArgument("basis evaluation point outside the unit square");
  if (deriv_order < 0 || deriv_order > 2) throw InvalidArgument("deriv_order must be 0, 1 or 2");
  const int e1 = u_.element_of(u);
  const int e2 = v_.element_of(v);
  const Eigen::MatrixXd bu = u_.evaluate(e1, u, deriv_order);
  const Eigen::MatrixXd bv = v_.evaluate(e2, v, deriv_order);
  const int p = degree();
  std::vector<BasisValue> out;
  out.reserve(local_count());
  for (int b = 0; b <= p; ++b) {
    for (int a = 0; a <= p; ++a) {
      BasisValue bvl;
      bvl.index = flat_index(u_.first_active(e1) + a, v_.first_active(e2) + b);
      bvl.value = bu(0, a) * bv(0, b);
      if (deriv_order >= 1) bvl.gradient = {bu(1, a) * bv(0, b), bu(0, a) * bv(1, b)};
      if (deriv_order >= 2) {
        bvl.hessian(0, 0) = bu(2, a) * bv(0, b);
        bvl.hessian(1, 1) = bu(0, a) * bv(2, b);
        bvl.hessian(0, 1) = bvl.hessian(1, 0) = bu(1, a) * bv(1, b);
      }
      out.push_back(bvl);
    }
  }
  return out;
}

SpacePtr build_space(int degree, int smoothness, int num_elements) {
  return std::make_shared<const TensorSplineSpace>(degree, smoothness, num_elements);
}

ParametricMesh::ParametricMesh(int num_elements, int points) : num_elements_(num_elements) {
  if (num_elements < 1) throw InvalidArgument("mesh needs at least one element");
  rule_ = gauss_legendre(points);
}

ElementBasis::ElementBasis(const TensorSplineSpace& space, const ParametricMesh& mesh)
    : mesh_(mesh), p_(space.degree()) {
  if (mesh.num_elements() != space.num_elements())
    throw InvalidArgument("mesh and spline space have different element counts");
  const int nq = mesh.points();
  tables_.reserve(static_cast<size_t>(mesh.num_elements()) * nq);
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < nq; ++q) tables_.push_back(space.u_space().evaluate(e, mesh.node(e, q), 1));
}

void ElementBasis::evaluate(int e1, int e2, int q1, int q2, Eigen::VectorXd& value, Eigen::VectorXd& du,
                            Eigen::VectorXd& dv) const {
  const Eigen::MatrixXd& tu = table(e1, q1);
  const Eigen::MatrixXd& tv = table(e2, q2);
  const int n = p_ + 1;
  value.resize(n * n);
  du.resize(n * n);
  dv.resize(n * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const int k = a + n * b;
      value[k] = tu(0, a) * tv(0, b);
      du[k] = tu(1, a) * tv(0, b);
      dv[k] = tu(0, a) * tv(1, b);
    }
  }
}

UnivariateQuasiInterpolant::UnivariateQuasiInterpolant(const UnivariateSpline& space) : space_(space) {
  const int p = space.degree();
  const int nq = p + 2;
  const GaussRule rule = gauss_legendre(nq);
  const double h = space.element_size();
  const int ne = space.num_elements();
  points_.resize(static_cast<size_t>(ne) * nq);
  std::vector<Eigen::MatrixXd> values(points_.size());
  for (int e = 0; e < ne; ++e) {
    for (int q = 0; q < nq; ++q) {
      const double x = (e + rule.nodes[q]) * h;
      points_[e * nq + q] = x;
      values[e * nq + q] = space.evaluate(e, x, 0);
    }
  }
  first_.resize(space.dim());
  weights_.resize(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    const auto [e0, e1] = space.support(i);
    const int k0 = space.first_active(e0);
    const int k1 = space.first_active(e1) + p;
    const int nk = k1 - k0 + 1;
    // Gram matrix of the functions active on supp(B_i), restricted to supp(B_i).
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nk, nk);
    for (int e = e0; e <= e1; ++e) {
      const int off = space.first_active(e) - k0;
      for (int q = 0; q < nq; ++q) {
        const Eigen::VectorXd b = values[e * nq + q].row(0).transpose();
        gram.block(off, off, p + 1, p + 1) += rule.weights[q] * h * b * b.transpose();
      }
    }
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(nk);
    unit[i - k0] = 1.0;
    const Eigen::VectorXd dual = gram.ldlt().solve(unit);
    first_[i] = e0 * nq;
    Eigen::VectorXd w((e1 - e0 + 1) * nq);
    for (int e = e0; e <= e1; ++e) {
      const int off = space.first_active(e) - k0;
      for (int q = 0; q < nq; ++q) {
        const Eigen::VectorXd b = values[e * nq + q].row(0).transpose();
        w[(e - e0) * nq + q] = rule.weights[q] * h * dual.segment(off, p + 1).dot(b);
      }
    }
    weights_[i] = std::move(w);
  }
}

Eigen::MatrixXd UnivariateQuasiInterpolant::apply(const std::function<Eigen::VectorXd(double)>& f,
                                                  int components) const {
  Eigen::MatrixXd samples(points_.size(), components);
  for (size_t k = 0; k < points_.size(); ++k) samples.row(k) = f(points_[k]).transpose();
  Eigen::MatrixXd coeffs(space_.dim(), components);
  for (int i = 0; i < space_.dim(); ++i)
    coeffs.row(i) = weights_[i].transpose() * samples.middleRows(first_[i], weights_[i].size());
  return coeffs;
}

QuasiInterpolant::QuasiInterpolant(SpacePtr space)
    : space_(std::move(space)), qu_(space_->u_space()), qv_(space_->v_space()) {}

double QuasiInterpolant::functional(int j, const Eigen::MatrixXd& samples) const {
  const auto [j1, j2] = space_->pair_index(j);
  const Eigen::VectorXd& wu = qu_.weights(j1);
  const Eigen::VectorXd& wv = qv_.weights(j2);
  return wu.dot(samples.block(qu_.first(j1), qv_.first(j2), wu.size(), wv.size()) * wv);
}

Eigen::MatrixXd QuasiInterpolant::apply(const std::function<Eigen::VectorXd(double, double)>& f, int components,
                                        BoundaryMode mode) const {
  const auto& pu = qu_.points();
  const auto& pv = qv_.points();
  std::vector<Eigen::MatrixXd> samples(components, Eigen::MatrixXd(pu.size(), pv.size()));
  for (size_t b = 0; b < pv.size(); ++b) {
    for (size_t a = 0; a < pu.size(); ++a) {
      const Eigen::VectorXd val = f(pu[a], pv[b]);
      if (val.size() != components) throw InvalidArgument("quasi-interpolated function has wrong component count");
      for (int d = 0; d < components; ++d) samples[d](a, b) = val[d];
    }
  }
  const int n = space_->dim();
  Eigen::MatrixXd coeffs(n, components);
  for (int j = 0; j < n; ++j)
    for (int d = 0; d < components; ++d) coeffs(j, d) = functional(j, samples[d]);
  if (mode == BoundaryMode::zero)
    for (int j : space_->boundary_indices()) coeffs.row(j).setZero();
  return coeffs;
}

Eigen::Vector2d edge_point(Edge edge, double s) {
  switch (edge) {
    case Edge::bottom:
      return {s, 0.0};
    case Edge::right:
      return {1.0, s};
    case Edge::top:
      return {s, 1.0};
    case Edge::left:
      return {0.0, s};
  }
  return {0.0, 0.0};
}

double edge_orientation(Edge edge) {
  switch (edge) {
    case Edge::bottom:
    case Edge::right:
      return -1.0;
    case Edge::top:
    case Edge::left:
      return 1.0;
  }
  return 1.0;
}

BoundaryTrace::BoundaryTrace(SpacePtr space) : space_(std::move(space)) {
  const int nu = space_->u_space().dim();
  const int nv = space_->v_space().dim();
  for (int k = 0; k < nu; ++k) {
    edge_flat_[static_cast<int>(Edge::bottom)].push_back(space_->flat_index(k, 0));
    edge_flat_[static_cast<int>(Edge::top)].push_back(space_->flat_index(k, nv - 1));
  }
  for (int k = 0; k < nv; ++k) {
    edge_flat_[static_cast<int>(Edge::right)].push_back(space_->flat_index(nu - 1, k));
    edge_flat_[static_cast<int>(Edge::left)].push_back(space_->flat_index(0, k));
  }
}

const UnivariateSpline& BoundaryTrace::edge_space(Edge edge) const {
  return (edge == Edge::bottom || edge == Edge::top) ? space_->u_space() : space_->v_space();
}

Eigen::MatrixXd BoundaryTrace::restrict(Edge edge, const Eigen::MatrixXd& coeffs) const {
  const auto& flat = edge_flat_[static_cast<int>(edge)];
  Eigen::MatrixXd out(flat.size(), coeffs.cols());
  for (size_t k = 0; k < flat.size(); ++k) out.row(k) = coeffs.row(flat[k]);
  return out;
}

BoundaryTrace boundary_trace_space(const SpacePtr& space) { return BoundaryTrace(space); }

}  // namespace igamcf
