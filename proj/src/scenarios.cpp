#include "igamcf/scenarios.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "igamcf/errors.hpp"
#include "igamcf/spline_field.hpp"

namespace igamcf {

Scenario perturbed_plane(double a) {
  if (a < 0.0) throw InvalidArgument("perturbation amplitude must be nonnegative");
  AnalyticSurface surface([a](double u, double v) {
    const double su = std::sin(M_PI * u), cu = std::cos(M_PI * u);
    const double sv = std::sin(M_PI * v), cv = std::cos(M_PI * v);
    const double k = a * M_PI;
    SurfaceJet j;
    j.x = {2 * u - 1, 2 * v - 1, a * su * sv};
    j.xu = {2, 0, k * cu * sv};
    j.xv = {0, 2, k * su * cv};
    j.xuu = {0, 0, -k * M_PI * su * sv};
    j.xuv = {0, 0, k * M_PI * cu * cv};
    j.xvv = {0, 0, -k * M_PI * su * sv};
    return j;
  });
  return {"perturbed_plane", surface, [surface](double u, double v) { return surface.mean_curvature(u, v); }};
}

Scenario sphere_patch(double theta) {
  if (!(theta > 0.0 && theta < M_PI / 2)) throw InvalidArgument("sphere patch extent must lie in (0, pi/2)");
  const double c = std::tan(theta / 2);
  AnalyticSurface surface([c](double u, double v) {
    // Inverse stereographic projection X(x, y) = (2x, 2y, 1 - r^2) / (1 + r^2)
    // with x = c(2v - 1), y = c(2u - 1); g = 1 / (1 + r^2).
    const double x = c * (2 * v - 1), y = c * (2 * u - 1);
    const double g = 1 / (1 + x * x + y * y);
    const double gx = -2 * x * g * g, gy = -2 * y * g * g;
    const double gxx = -2 * g * g + 8 * x * x * g * g * g;
    const double gyy = -2 * g * g + 8 * y * y * g * g * g;
    const double gxy = 8 * x * y * g * g * g;
    const Eigen::Vector3d X(2 * x * g, 2 * y * g, 2 * g - 1);
    const Eigen::Vector3d Xx(2 * g + 2 * x * gx, 2 * y * gx, 2 * gx);
    const Eigen::Vector3d Xy(2 * x * gy, 2 * g + 2 * y * gy, 2 * gy);
    const Eigen::Vector3d Xxx(4 * gx + 2 * x * gxx, 2 * y * gxx, 2 * gxx);
    const Eigen::Vector3d Xxy(2 * gy + 2 * x * gxy, 2 * gx + 2 * y * gxy, 2 * gxy);
    const Eigen::Vector3d Xyy(2 * x * gyy, 4 * gy + 2 * y * gyy, 2 * gyy);
    const double k = 2 * c;
    SurfaceJet j;
    j.x = X;
    j.xu = k * Xy;
    j.xv = k * Xx;
    j.xuu = k * k * Xyy;
    j.xuv = k * k * Xxy;
    j.xvv = k * k * Xxx;
    return j;
  });
  return {"sphere_patch", surface, [](double, double) { return -2.0; }};
}

double sphere_patch_area(double theta) {
  // int_{[-c,c]^2} 4 / (1 + x^2 + y^2)^2, inner integral in closed form.
  const double c = std::tan(theta / 2);
  const GaussRule rule = gauss_legendre(64);
  double area = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = c * (2 * rule.nodes[q] - 1);
    const double a2 = 1 + x * x, a = std::sqrt(a2);
    const double inner = c / (a2 * (a2 + c * c)) + std::atan(c / a) / (a2 * a);
    area += rule.weights[q] * 2 * c * 4 * inner;
  }
  return area;
}

double discrete_initial_area(const Scenario& s, int degree, int smoothness, int elements) {
  const SpacePtr space = build_space(degree, smoothness, elements);
  const QuasiInterpolant Q(space);
  const SplineField X = apply_quasi_interpolant(
      Q, [&](double u, double v) -> Eigen::VectorXd { return s.surface.position(u, v); }, 3);
  return surface_area(X, ParametricMesh(elements, degree + 2));
}

namespace {

// Root of an increasing function on [lo, hi].
template <class F>
double bisect(F f, double lo, double hi, double target) {
  if (!(f(lo) <= target && f(hi) >= target)) throw InvalidArgument("calibration target outside the bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double calibrate_plane_amplitude(double target, int degree, int smoothness, int elements) {
  return bisect([&](double a) { return discrete_initial_area(perturbed_plane(a), degree, smoothness, elements); },
                0.0, 1.0, target);
}

double calibrate_sphere_extent(double target) {
  return bisect(sphere_patch_area, 1e-3, M_PI / 2 - 1e-9, target);
}

namespace {

std::mutex registry_mutex;

std::map<std::string, ScenarioFactory>& registry() {
  static std::map<std::string, ScenarioFactory> r = {
      {"perturbed_plane", [](const ScenarioConfig& c) { return perturbed_plane(c.perturbation_amplitude); }},
      {"sphere_patch", [](const ScenarioConfig& c) { return sphere_patch(c.patch_polar_extent); }},
  };
  return r;
}

}  // namespace

void register_scenario(const std::string& name, ScenarioFactory factory) {
  if (name.empty() || !factory) throw InvalidArgument("scenario registration needs a name and a factory");
  std::lock_guard lock(registry_mutex);
  registry()[name] = std::move(factory);
}

std::vector<std::string> scenario_names() {
  std::lock_guard lock(registry_mutex);
  std::vector<std::string> out;
  for (const auto& [name, f] : registry()) out.push_back(name);
  return out;
}

Scenario make_scenario(const ScenarioConfig& cfg) {
  ScenarioFactory f;
  {
    std::lock_guard lock(registry_mutex);
    const auto it = registry().find(cfg.scenario);
    if (it == registry().end()) throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    f = it->second;
  }
  Scenario s = f(cfg);
  if (s.name.empty()) s.name = cfg.scenario;
  return s;
}

}  // namespace igamcf
