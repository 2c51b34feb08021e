#include "igamcf/analytic_surface.hpp"

namespace igamcf {

SurfaceJet normalize_jet(const SurfaceJet& p) {
  const double r = p.x.norm();
  SurfaceJet s;
  s.x = p.x / r;
  const double ru = s.x.dot(p.xu);
  const double rv = s.x.dot(p.xv);
  s.xu = (p.xu - s.x * ru) / r;
  s.xv = (p.xv - s.x * rv) / r;
  const double ruu = s.xu.dot(p.xu) + s.x.dot(p.xuu);
  const double ruv = s.xv.dot(p.xu) + s.x.dot(p.xuv);
  const double rvv = s.xv.dot(p.xv) + s.x.dot(p.xvv);
  s.xuu = (p.xuu - s.xu * ru - s.x * ruu - s.xu * ru) / r;
  s.xuv = (p.xuv - s.xv * ru - s.x * ruv - s.xu * rv) / r;
  s.xvv = (p.xvv - s.xv * rv - s.x * rvv - s.xv * rv) / r;
  return s;
}

Matrix32 AnalyticSurface::jacobian(double u, double v) const {
  const SurfaceJet j = jet_(u, v);
  Matrix32 J;
  J.col(0) = j.xu;
  J.col(1) = j.xv;
  return J;
}

Eigen::Vector3d AnalyticSurface::normal(double u, double v) const {
  const SurfaceJet j = jet_(u, v);
  return j.xu.cross(j.xv).normalized();
}

Matrix32 AnalyticSurface::normal_jacobian(double u, double v) const {
  const SurfaceJet j = jet_(u, v);
  const Eigen::Vector3d n = j.xu.cross(j.xv);
  const double len = n.norm();
  const Eigen::Vector3d nu = n / len;
  const Eigen::Vector3d n_u = j.xuu.cross(j.xv) + j.xu.cross(j.xuv);
  const Eigen::Vector3d n_v = j.xuv.cross(j.xv) + j.xu.cross(j.xvv);
  Matrix32 out;
  out.col(0) = (n_u - nu * nu.dot(n_u)) / len;
  out.col(1) = (n_v - nu * nu.dot(n_v)) / len;
  return out;
}

Weingarten AnalyticSurface::weingarten(double u, double v) const {
  const GeometrySample s = make_sample(jacobian(u, v), {u, v});
  return igamcf::weingarten(Eigen::MatrixXd(normal_jacobian(u, v)), s);
}

EdgeGeometry AnalyticSurface::edge(Edge e, double s) const {
  const Eigen::Vector2d p = edge_point(e, s);
  const SurfaceJet j = jet_(p.x(), p.y());
  const bool along_u = e == Edge::bottom || e == Edge::top;
  const Eigen::Vector3d nu = j.xu.cross(j.xv).normalized();
  const BoundaryFrame f =
      frame_from_edge_derivatives(along_u ? j.xu : j.xv, along_u ? j.xuu : j.xvv, edge_orientation(e), nu, s);
  return {f.tangent, f.curvature_vector, f.length_element};
}

ParametricSurface AnalyticSurface::as_parametric() const {
  return {[self = *this](double u, double v) { return self.jacobian(u, v); }};
}

ParametricField AnalyticSurface::normal_field() const {
  return {3, [self = *this](double u, double v) -> Eigen::VectorXd { return self.normal(u, v); },
          [self = *this](double u, double v) -> Eigen::MatrixXd { return self.normal_jacobian(u, v); }};
}

ParametricBoundary AnalyticSurface::boundary() const {
  return {[self = *this](Edge e, double s) { return self.edge(e, s); }};
}

}  // namespace igamcf
