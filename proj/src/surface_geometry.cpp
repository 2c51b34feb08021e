#include "igamcf/surface_geometry.hpp"

#include <cmath>
#include <vector>

#include "igamcf/errors.hpp"
#include "igamcf/parallel.hpp"

namespace igamcf {

GeometrySample make_sample(const Matrix32& jacobian, const Eigen::Vector2d& param) {
  GeometrySample s;
  s.param = param;
  s.jacobian = jacobian;
  const Eigen::Vector3d xu = jacobian.col(0);
  const Eigen::Vector3d xv = jacobian.col(1);
  const double g11 = xu.dot(xu);
  const double g12 = xu.dot(xv);
  const double g22 = xv.dot(xv);
  s.metric << g11, g12, g12, g22;
  const double det = g11 * g22 - g12 * g12;
  if (!(det > kDegenerateTolerance))
    throw DegenerateSurface("degenerate parameterization at (" + std::to_string(param.x()) + ", " +
                            std::to_string(param.y()) + "): det G = " + std::to_string(det));
  s.metric_inv << g22 / det, -g12 / det, -g12 / det, g11 / det;
  s.area_element = std::sqrt(det);
  s.normal = xu.cross(xv) / s.area_element;
  s.pushforward = jacobian * s.metric_inv;
  return s;
}

GeometrySample geometry_at(const SplineField& X, double u, double v) {
  if (X.components() != 3) throw InvalidArgument("geometry needs a 3-component position field");
  return make_sample(X.gradient(u, v), {u, v});
}

Eigen::MatrixXd surface_gradient(const Eigen::MatrixXd& param_jacobian, const GeometrySample& s) {
  return param_jacobian * s.pushforward.transpose();
}

Eigen::MatrixXd surface_gradient(const SplineField& f, const GeometrySample& s) {
  return surface_gradient(f.gradient(s.param.x(), s.param.y()), s);
}

Weingarten weingarten(const Eigen::MatrixXd& normal_param_jacobian, const GeometrySample& s) {
  Weingarten w;
  w.A = surface_gradient(normal_param_jacobian, s);
  w.frob_sq = w.A.squaredNorm();
  w.trace = w.A.trace();
  return w;
}

Weingarten weingarten(const SplineField& nu, const GeometrySample& s) {
  if (nu.components() != 3) throw InvalidArgument("normal field must have 3 components");
  return weingarten(nu.gradient(s.param.x(), s.param.y()), s);
}

BoundaryFrame frame_from_edge_derivatives(const Eigen::Vector3d& d1, const Eigen::Vector3d& d2, double orientation,
                                          const Eigen::Vector3d& nu, double s) {
  const double speed = d1.norm();
  if (!(speed * speed > kDegenerateTolerance)) throw DegenerateSurface("zero boundary tangent");
  const Eigen::Vector3d t = d1 / speed;
  BoundaryFrame f;
  f.arc_param = s;
  f.tangent = orientation * t;
  f.curvature_vector = (d2 - d2.dot(t) * t) / (speed * speed);
  f.conormal = nu.cross(f.tangent);
  f.length_element = speed;
  return f;
}

BoundaryFrame boundary_frame(const SplineField& X, const Eigen::Vector3d& nu, Edge edge, double s) {
  const Eigen::Vector2d p = edge_point(edge, s);
  const SplineField::Jet j = X.jet(p.x(), p.y());
  const bool along_u = edge == Edge::bottom || edge == Edge::top;
  const Eigen::Vector3d d1 = j.gradient.col(along_u ? 0 : 1);
  const Eigen::Vector3d d2 = j.second.col(along_u ? 0 : 2);
  return frame_from_edge_derivatives(d1, d2, edge_orientation(edge), nu, s);
}

double surface_area(const SplineField& X, const ParametricMesh& mesh) {
  const TensorSplineSpace& space = X.space();
  const ElementBasis basis(space, mesh);
  const int ne = mesh.num_elements();
  const int nq = mesh.points();
  const int chunks = ne;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(ne * ne, chunks, [&](int c, int begin, int end) {
    Eigen::VectorXd val, du, dv;
    double sum = 0.0;
    for (int e = begin; e < end; ++e) {
      const int e1 = e % ne, e2 = e / ne;
      const auto dofs = space.element_dofs(e1, e2);
      for (int q2 = 0; q2 < nq; ++q2) {
        for (int q1 = 0; q1 < nq; ++q1) {
          basis.evaluate(e1, e2, q1, q2, val, du, dv);
          Matrix32 J = Matrix32::Zero();
          for (size_t k = 0; k < dofs.size(); ++k) {
            const Eigen::Vector3d c = X.coeffs().row(dofs[k]).transpose();
            J.col(0) += du[k] * c;
            J.col(1) += dv[k] * c;
          }
          const GeometrySample g = make_sample(J, {mesh.node(e1, q1), mesh.node(e2, q2)});
          sum += g.area_element * mesh.weight(q1, q2);
        }
      }
    }
    partial[c] = sum;
  });
  double area = 0.0;
  for (double a : partial) area += a;
  return area;
}

ParametricSurface as_parametric_surface(const SplineField& X) {
  return {[X](double u, double v) -> Matrix32 { return X.gradient(u, v); }};
}

ParametricField as_parametric_field(const SplineField& f) {
  return {f.components(), [f](double u, double v) { return f.value(u, v); },
          [f](double u, double v) { return f.gradient(u, v); }};
}

}  // namespace igamcf
