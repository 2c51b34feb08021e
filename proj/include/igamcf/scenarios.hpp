#pragma once

#include <functional>
#include <string>
#include <vector>

#include "igamcf/analytic_surface.hpp"
#include "igamcf/config.hpp"

namespace igamcf {

/// Analytic initial data: X0 through its jet (nu0, tau and kappa_partial follow
/// from it) and the initial mean curvature kappa0 o X0.
struct Scenario {
  std::string name;
  AnalyticSurface surface;
  std::function<double(double, double)> mean_curvature;
};

/// X0(u,v) = (2u-1, 2v-1, a sin(pi u) sin(pi v)) over the 2 x 2 square.
Scenario perturbed_plane(double amplitude);
/// Square patch of the unit sphere: the inverse stereographic image of the
/// square [-c, c]^2, c = tan(theta / 2), so edge midpoints sit at polar angle
/// theta. Conformal, so the corners keep right angles; edges are small circles.
/// Oriented with nu0 = -X0, kappa0 = -2.
Scenario sphere_patch(double polar_extent);

/// Analytic area of the sphere patch.
double sphere_patch_area(double polar_extent);

/// Area of Q X0 on the (degree, smoothness, N) space, (p+2)-point Gauss.
double discrete_initial_area(const Scenario& s, int degree, int smoothness, int elements);

/// Bisection for the plane amplitude whose discrete initial area hits target.
double calibrate_plane_amplitude(double target = 4.0442, int degree = 2, int smoothness = 1, int elements = 20);
/// Bisection for the sphere extent whose analytic area hits target.
double calibrate_sphere_extent(double target = 5.859);

/// Plug-in point for user scenarios: the factory receives the full config.
using ScenarioFactory = std::function<Scenario(const ScenarioConfig&)>;
void register_scenario(const std::string& name, ScenarioFactory factory);
std::vector<std::string> scenario_names();
/// Builds the scenario named by cfg.scenario; throws ConfigError if unknown.
Scenario make_scenario(const ScenarioConfig& cfg);

}  // namespace igamcf
