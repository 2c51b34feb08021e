#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance checks. They go through the full tensor basis and dense
// accumulation rather than the element-local paths of the library.

#include <Eigen/Dense>

#include <vector>

#include "igamcf/boundary_data.hpp"
#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"

namespace igamcf::oracle {

/// Every basis function of the space at (u, v).
inline std::vector<double> full_basis(const TensorSplineSpace& s, double u, double v) {
  std::vector<double> out(s.dim(), 0.0);
  for (const auto& b : s.eval_basis(u, v, 0)) out[b.index] += b.value;
  return out;
}

/// fb at every boundary Gauss point against every basis function of the full
/// space, evaluated through the tensor basis and accumulated densely.
inline Eigen::VectorXd brute_force_fb(const BoundaryTrace& trace, const SplineField& X, const SplineField& nu,
                                      const BoundaryData& bd, int points) {
  const TensorSplineSpace& s = trace.space();
  const int n = s.dim(), ne = s.num_elements();
  const GaussRule g = gauss_legendre(points);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * n);
  for (Edge e : kEdges) {
    const UnivariateSpline& es = trace.edge_space(e);
    const bool along_u = e == Edge::bottom || e == Edge::top;
    for (int k = 0; k < ne; ++k)
      for (int q = 0; q < points; ++q) {
        const double t = (k + g.nodes[q]) / ne;
        const Eigen::Vector2d p = edge_point(e, t);
        Eigen::VectorXd all(n);
        all.setZero();
        for (const auto& b : s.eval_basis(p[0], p[1], 0)) all[b.index] = b.value;
        const Eigen::MatrixXd J = X.gradient(p[0], p[1]);
        const double ds = J.col(along_u ? 0 : 1).norm();
        Eigen::VectorXd edge_vals = Eigen::VectorXd::Zero(es.dim());
        const Eigen::MatrixXd ev = es.evaluate(es.element_of(t), t, 0);
        for (int a = 0; a <= es.degree(); ++a) edge_vals[es.first_active(es.element_of(t)) + a] = ev(0, a);
        const Eigen::Vector3d tau = (edge_vals.transpose() * bd.tangent_on(e)).transpose();
        const Eigen::Vector3d kap = (edge_vals.transpose() * bd.curvature_on(e)).transpose();
        const Eigen::Vector3d v = nu.value(p[0], p[1]);
        const Eigen::Vector3d load = v.dot(kap) * v.cross(tau) * ds * g.weights[q] / ne;
        for (int c = 0; c < 3; ++c) out.segment(c * n, n) += load[c] * all;
      }
  }
  return out;
}

}  // namespace igamcf::oracle
