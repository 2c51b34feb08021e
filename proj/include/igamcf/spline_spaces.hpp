#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace igamcf {

/// Gauss-Legendre rule with n points mapped to [0, 1]. Weights sum to 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Univariate B-spline space of degree p and global smoothness C^l on a
/// uniform partition of [0, 1] into N elements, with an open knot vector
/// whose interior knots are repeated p - l times.
class UnivariateSpline {
 public:
  UnivariateSpline(int degree, int smoothness, int num_elements);

  int degree() const { return degree_; }
  int smoothness() const { return smoothness_; }
  int num_elements() const { return num_elements_; }
  int dim() const { return dim_; }
  double element_size() const { return 1.0 / num_elements_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Element containing x; x == 1 belongs to the last element.
  int element_of(double x) const;
  /// Index of the first of the p + 1 basis functions active on an element.
  int first_active(int element) const { return element * multiplicity_; }
  /// Closed range [first, last] of elements where basis function i is nonzero.
  std::pair<int, int> support(int basis) const;

  /// Row r holds the r-th derivatives of the p + 1 active basis functions at x.
  Eigen::MatrixXd evaluate(int element, double x, int num_derivatives) const;

 private:
  int degree_;
  int smoothness_;
  int num_elements_;
  int multiplicity_;
  int dim_;
  std::vector<double> knots_;
};

struct BasisValue {
  int index = 0;
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

/// Tensor-product spline space S_p,l,h (x) S_p,l,h on the unit square.
/// Flat index j = j1 + n * j2 with j1 along u.
class TensorSplineSpace {
 public:
  TensorSplineSpace(int degree, int smoothness, int num_elements);

  const UnivariateSpline& u_space() const { return u_; }
  const UnivariateSpline& v_space() const { return v_; }
  int degree() const { return u_.degree(); }
  int smoothness() const { return u_.smoothness(); }
  int num_elements() const { return u_.num_elements(); }
  int dim() const { return u_.dim() * v_.dim(); }
  int local_count() const { return (degree() + 1) * (degree() + 1); }

  int flat_index(int i, int j) const { return i + u_.dim() * j; }
  std::pair<int, int> pair_index(int flat) const { return {flat % u_.dim(), flat / u_.dim()}; }

  bool is_boundary(int flat) const { return boundary_position_[flat] >= 0; }
  const std::vector<int>& boundary_indices() const { return boundary_; }
  const std::vector<int>& interior_indices() const { return interior_; }
  int num_boundary() const { return static_cast<int>(boundary_.size()); }
  int num_interior() const { return static_cast<int>(interior_.size()); }
  /// Position of a flat index in interior_indices(), or -1.
  int interior_position(int flat) const { return interior_position_[flat]; }
  /// Position of a flat index in boundary_indices(), or -1.
  int boundary_position(int flat) const { return boundary_position_[flat]; }

  /// Flat indices of the (p+1)^2 functions active on element (e1, e2), u fastest.
  std::vector<int> element_dofs(int e1, int e2) const;

  /// All basis functions nonzero at (u, v). Hessians are filled for deriv_order 2.
  std::vector<BasisValue> eval_basis(double u, double v, int deriv_order) const;

 private:
  UnivariateSpline u_;
  UnivariateSpline v_;
  std::vector<int> boundary_;
  std::vector<int> interior_;
  std::vector<int> interior_position_;
  std::vector<int> boundary_position_;
};

using SpacePtr = std::shared_ptr<const TensorSplineSpace>;

/// Validates (p, l, N) and builds the space.
SpacePtr build_space(int degree, int smoothness, int num_elements);

/// Uniform N x N element partition of the unit square with a tensor Gauss
/// rule of `points` nodes per direction on every element.
class ParametricMesh {
 public:
  ParametricMesh(int num_elements, int points);

  int num_elements() const { return num_elements_; }
  int points() const { return static_cast<int>(rule_.nodes.size()); }
  double h() const { return 1.0 / num_elements_; }
  const GaussRule& rule() const { return rule_; }

  double node(int element, int q) const { return (element + rule_.nodes[q]) * h(); }
  /// Parametric weight of point (q1, q2); weights of one element sum to h^2.
  double weight(int q1, int q2) const { return rule_.weights[q1] * rule_.weights[q2] * h() * h(); }

 private:
  int num_elements_;
  GaussRule rule_;
};

/// Tensor basis values tabulated on the quadrature points of a mesh.
class ElementBasis {
 public:
  ElementBasis(const TensorSplineSpace& space, const ParametricMesh& mesh);

  const ParametricMesh& mesh() const { return mesh_; }
  int local_count() const { return (p_ + 1) * (p_ + 1); }

  /// Values and parametric first derivatives of the element's local functions.
  void evaluate(int e1, int e2, int q1, int q2, Eigen::VectorXd& value, Eigen::VectorXd& du,
                Eigen::VectorXd& dv) const;

 private:
  const Eigen::MatrixXd& table(int element, int q) const { return tables_[element * mesh_.points() + q]; }

  ParametricMesh mesh_;
  int p_;
  std::vector<Eigen::MatrixXd> tables_;
};

/// Local least-squares dual functionals of a univariate space: lambda_i(f) is
/// the coefficient of B_i in the L2 projection of f onto the functions active on
/// supp(B_i), computed with a (p+2)-point Gauss rule per element.
class UnivariateQuasiInterpolant {
 public:
  explicit UnivariateQuasiInterpolant(const UnivariateSpline& space);

  const UnivariateSpline& space() const { return space_; }
  /// All points read by the functionals, ascending.
  const std::vector<double>& points() const { return points_; }
  /// Functional i is sum_k weights(i)[k] * f(points()[first(i) + k]).
  int first(int i) const { return first_[i]; }
  const Eigen::VectorXd& weights(int i) const { return weights_[i]; }

  /// Coefficients (dim x D) of Q f for f : [0,1] -> R^D.
  Eigen::MatrixXd apply(const std::function<Eigen::VectorXd(double)>& f, int components) const;

 private:
  UnivariateSpline space_;
  std::vector<double> points_;
  std::vector<int> first_;
  std::vector<Eigen::VectorXd> weights_;
};

enum class BoundaryMode { keep, zero };

/// Tensor product of univariate dual functionals: lambda_j = lambda_j1 (x) lambda_j2.
class QuasiInterpolant {
 public:
  explicit QuasiInterpolant(SpacePtr space);

  const TensorSplineSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const UnivariateQuasiInterpolant& u_functionals() const { return qu_; }
  const UnivariateQuasiInterpolant& v_functionals() const { return qv_; }

  /// Coefficients (N x D) of Q f. BoundaryMode::zero overwrites every
  /// boundary coefficient with exactly 0.
  Eigen::MatrixXd apply(const std::function<Eigen::VectorXd(double, double)>& f, int components,
                        BoundaryMode mode = BoundaryMode::keep) const;

  /// Value of lambda_j on tabulated data: samples(a, b) = f(points_u[a], points_v[b]).
  double functional(int j, const Eigen::MatrixXd& samples) const;

 private:
  SpacePtr space_;
  UnivariateQuasiInterpolant qu_;
  UnivariateQuasiInterpolant qv_;
};

/// Boundary edges of the unit square, each parameterized by s in [0, 1]
/// along increasing u (bottom, top) or increasing v (right, left).
enum class Edge { bottom = 0, right = 1, top = 2, left = 3 };
inline constexpr std::array<Edge, 4> kEdges = {Edge::bottom, Edge::right, Edge::top, Edge::left};

/// Parametric point of an edge at edge parameter s.
Eigen::Vector2d edge_point(Edge edge, double s);
/// +1 / -1 such that sign * dX/ds, normalized, is the boundary tangent tau for
/// which nu x tau is the outward conormal (nu = X_u x X_v normalized).
double edge_orientation(Edge edge);

/// Trace space on the boundary of the unit square: per edge, the univariate
/// space, and the map from edge-local DOFs to flat indices of the tensor space.
class BoundaryTrace {
 public:
  explicit BoundaryTrace(SpacePtr space);

  const TensorSplineSpace& space() const { return *space_; }
  const UnivariateSpline& edge_space(Edge edge) const;
  int dofs_per_edge(Edge edge) const { return static_cast<int>(edge_flat_[static_cast<int>(edge)].size()); }
  /// Flat index of the k-th trace function along an edge.
  int flat_index(Edge edge, int k) const { return edge_flat_[static_cast<int>(edge)][k]; }
  /// Distinct boundary DOFs (corners counted once); equals space().num_boundary().
  int num_dofs() const { return space_->num_boundary(); }
  /// Trace DOF position of a flat boundary index.
  int trace_position(int flat) const { return space_->boundary_position(flat); }

  /// Edge coefficients (n_edge x D) of a field with coefficients N x D.
  Eigen::MatrixXd restrict(Edge edge, const Eigen::MatrixXd& coeffs) const;

 private:
  SpacePtr space_;
  std::array<std::vector<int>, 4> edge_flat_;
};

BoundaryTrace boundary_trace_space(const SpacePtr& space);

}  // namespace igamcf
