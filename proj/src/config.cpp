#include "igamcf/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "igamcf/errors.hpp"

namespace igamcf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
    throw ConfigError("key '" + key + "': expected a real number, got '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE || x < -2147483647L || x > 2147483647L)
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

struct Key {
  const char* name;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define IGAMCF_STRING(m) \
  Key{#m, [](ScenarioConfig& c, const std::string& v) { c.m = v; }, [](const ScenarioConfig& c) { return c.m; }}
#define IGAMCF_INT(m)                                                                   \
  Key{#m, [](ScenarioConfig& c, const std::string& v) { c.m = parse_int(#m, v); }, \
      [](const ScenarioConfig& c) { return std::to_string(c.m); }}
#define IGAMCF_REAL(m)                                                                   \
  Key{#m, [](ScenarioConfig& c, const std::string& v) { c.m = parse_real(#m, v); }, \
      [](const ScenarioConfig& c) { return format_real(c.m); }}
#define IGAMCF_BOOL(m)                                                                   \
  Key{#m, [](ScenarioConfig& c, const std::string& v) { c.m = parse_bool(#m, v); }, \
      [](const ScenarioConfig& c) { return std::string(c.m ? "true" : "false"); }}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      IGAMCF_STRING(scenario),
      IGAMCF_INT(degree),
      IGAMCF_INT(smoothness),
      IGAMCF_INT(elements_per_side),
      IGAMCF_REAL(dt),
      IGAMCF_REAL(t_final),
      IGAMCF_INT(bdf_order),
      IGAMCF_INT(snapshot_stride),
      IGAMCF_STRING(output_dir),
      IGAMCF_REAL(perturbation_amplitude),
      IGAMCF_REAL(patch_polar_extent),
      IGAMCF_REAL(ritz_lambda),
      IGAMCF_REAL(ritz_fp_tol),
      IGAMCF_INT(ritz_fp_max_iter),
      IGAMCF_REAL(ritz_lambda_growth),
      IGAMCF_REAL(solver_tolerance),
      IGAMCF_STRING(corner_constraints),
      IGAMCF_INT(vtk_resolution),
      IGAMCF_BOOL(vtk_xml),
  };
  return k;
}

#undef IGAMCF_STRING
#undef IGAMCF_INT
#undef IGAMCF_REAL
#undef IGAMCF_BOOL

}  // namespace

void validate(const ScenarioConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (c.scenario.empty()) fail("scenario must not be empty");
  if (c.degree < 2) fail("degree must be at least 2");
  if (c.smoothness < 0 || c.smoothness >= c.degree) fail("smoothness must satisfy 0 <= smoothness < degree");
  if (c.elements_per_side < 1) fail("elements_per_side must be at least 1");
  if (!(c.dt > 0.0)) fail("dt must be positive");
  if (!(c.t_final >= 0.0)) fail("t_final must be nonnegative");
  if (c.bdf_order != 1 && c.bdf_order != 2) fail("bdf_order must be 1 or 2");
  if (c.snapshot_stride < 0) fail("snapshot_stride must be nonnegative");
  if (c.perturbation_amplitude < 0.0) fail("perturbation_amplitude must be nonnegative");
  if (!(c.patch_polar_extent > 0.0 && c.patch_polar_extent < M_PI / 2))
    fail("patch_polar_extent must lie in (0, pi/2)");
  if (!(c.ritz_lambda > 0.0)) fail("ritz_lambda must be positive");
  if (!(c.ritz_fp_tol > 0.0)) fail("ritz_fp_tol must be positive");
  if (c.ritz_fp_max_iter < 1) fail("ritz_fp_max_iter must be at least 1");
  if (!(c.ritz_lambda_growth > 1.0)) fail("ritz_lambda_growth must exceed 1");
  if (!(c.solver_tolerance > 0.0)) fail("solver_tolerance must be positive");
  if (c.corner_constraints != "split" && c.corner_constraints != "shared")
    fail("corner_constraints must be split or shared");
  if (c.vtk_resolution < 1) fail("vtk_resolution must be at least 1");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Key* k = nullptr;
    for (const Key& c : keys())
      if (key == c.name) k = &c;
    if (!k) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    k->set(cfg, value);
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  return out;
}

}  // namespace igamcf
