#include "igamcf/output.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "igamcf/errors.hpp"

namespace igamcf {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string diagnostics_csv(const std::vector<StepDiagnostics>& rows) {
  std::string out = std::string(kDiagnosticsHeader) + "\n";
  for (const auto& r : rows)
    out += fmt(r.time) + "," + fmt(r.area) + "," + fmt(r.max_abs_kappa) + "," + fmt(r.constraint_residual) + "," +
           fmt(r.max_solver_residual()) + "," + fmt(r.wallclock_s) + "\n";
  return out;
}

void write_diagnostics_csv(const std::string& path, const std::vector<StepDiagnostics>& rows) {
  write_text(path, diagnostics_csv(rows));
}

std::vector<StepDiagnostics> parse_diagnostics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader) throw IoError("diagnostics CSV has a wrong header");
  std::vector<StepDiagnostics> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double f[6];
    std::istringstream ls(line);
    std::string cell;
    for (double& x : f) {
      if (!std::getline(ls, cell, ',')) throw IoError("diagnostics CSV row has too few columns");
      x = std::stod(cell);
    }
    StepDiagnostics d;
    d.time = f[0], d.area = f[1], d.max_abs_kappa = f[2], d.constraint_residual = f[3];
    d.solver_residuals = {f[4]};
    d.wallclock_s = f[5];
    rows.push_back(d);
  }
  return rows;
}

SurfaceSamples sample_surface(const FlowProblem& problem, const FlowState& state, int resolution) {
  if (resolution < 1) throw InvalidArgument("VTK resolution must be at least 1");
  const int m = resolution * problem.space().num_elements();
  const SplineField X = problem.position(state), nu = problem.normal(state), v = problem.velocity(state);
  const SplineField kappa = problem.curvature(state);
  SurfaceSamples s;
  s.per_side = m + 1;
  const int count = s.per_side * s.per_side;
  s.points.resize(3, count);
  s.normal.resize(3, count);
  s.velocity.resize(3, count);
  s.kappa.resize(count);
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= m; ++i) {
      const int k = i + s.per_side * j;
      const double u = double(i) / m, w = double(j) / m;
      s.points.col(k) = X.value(u, w);
      s.normal.col(k) = nu.value(u, w);
      s.velocity.col(k) = v.value(u, w);
      s.kappa[k] = kappa.value(u, w)[0];
    }
  return s;
}

namespace {

template <class Quad>
void for_each_quad(int per_side, Quad quad) {
  for (int j = 0; j + 1 < per_side; ++j)
    for (int i = 0; i + 1 < per_side; ++i) {
      const int a = i + per_side * j;
      quad(a, a + 1, a + 1 + per_side, a + per_side);
    }
}

void append_vectors(std::string& out, const Eigen::MatrixXd& m, const char* sep) {
  for (int k = 0; k < m.cols(); ++k) out += fmt(m(0, k)) + " " + fmt(m(1, k)) + " " + fmt(m(2, k)) + sep;
}

}  // namespace

std::string vtk_legacy(const SurfaceSamples& s, const std::string& title) {
  const int n = static_cast<int>(s.points.cols());
  const int cells = (s.per_side - 1) * (s.per_side - 1);
  std::string out = "# vtk DataFile Version 3.0\n" + title + "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out += "POINTS " + std::to_string(n) + " double\n";
  append_vectors(out, s.points, "\n");
  out += "CELLS " + std::to_string(cells) + " " + std::to_string(5 * cells) + "\n";
  for_each_quad(s.per_side, [&](int a, int b, int c, int d) {
    out += "4 " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + " " + std::to_string(d) + "\n";
  });
  out += "CELL_TYPES " + std::to_string(cells) + "\n";
  for (int k = 0; k < cells; ++k) out += "9\n";
  out += "POINT_DATA " + std::to_string(n) + "\nSCALARS kappa double 1\nLOOKUP_TABLE default\n";
  for (int k = 0; k < n; ++k) out += fmt(s.kappa[k]) + "\n";
  out += "VECTORS nu double\n";
  append_vectors(out, s.normal, "\n");
  out += "VECTORS velocity double\n";
  append_vectors(out, s.velocity, "\n");
  return out;
}

std::string vtk_xml(const SurfaceSamples& s) {
  const int n = static_cast<int>(s.points.cols());
  const int cells = (s.per_side - 1) * (s.per_side - 1);
  std::string out =
      "<?xml version=\"1.0\"?>\n<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
      "<UnstructuredGrid>\n<Piece NumberOfPoints=\"" +
      std::to_string(n) + "\" NumberOfCells=\"" + std::to_string(cells) + "\">\n";
  out += "<PointData Scalars=\"kappa\" Vectors=\"nu\">\n<DataArray type=\"Float64\" Name=\"kappa\" format=\"ascii\">\n";
  for (int k = 0; k < n; ++k) out += fmt(s.kappa[k]) + "\n";
  out += "</DataArray>\n<DataArray type=\"Float64\" Name=\"nu\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  append_vectors(out, s.normal, "\n");
  out += "</DataArray>\n<DataArray type=\"Float64\" Name=\"velocity\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  append_vectors(out, s.velocity, "\n");
  out += "</DataArray>\n</PointData>\n<Points>\n<DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  append_vectors(out, s.points, "\n");
  out += "</DataArray>\n</Points>\n<Cells>\n<DataArray type=\"Int64\" Name=\"connectivity\" format=\"ascii\">\n";
  for_each_quad(s.per_side, [&](int a, int b, int c, int d) {
    out += std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + " " + std::to_string(d) + "\n";
  });
  out += "</DataArray>\n<DataArray type=\"Int64\" Name=\"offsets\" format=\"ascii\">\n";
  for (int k = 1; k <= cells; ++k) out += std::to_string(4 * k) + "\n";
  out += "</DataArray>\n<DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
  for (int k = 0; k < cells; ++k) out += "9\n";
  out += "</DataArray>\n</Cells>\n</Piece>\n</UnstructuredGrid>\n</VTKFile>\n";
  return out;
}

void write_vtk(const std::string& path, const FlowProblem& problem, const FlowState& state, int resolution, bool xml) {
  const SurfaceSamples s = sample_surface(problem, state, resolution);
  write_text(path, xml ? vtk_xml(s) : vtk_legacy(s, "igamcf surface t=" + fmt(state.time)));
}

std::string state_json(const FlowState& s) {
  nlohmann::json j;
  j["time"] = s.time;
  j["x"] = to_json(s.x);
  j["kappa"] = to_json(s.kappa);
  j["nu"] = to_json(s.nu);
  j["v"] = to_json(s.v);
  j["multiplier"] = to_json(s.multiplier);
  return j.dump(1);
}

FlowState parse_state_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    FlowState s;
    s.time = j.at("time").get<double>();
    s.x = vector_from(j.at("x"));
    s.kappa = vector_from(j.at("kappa"));
    s.nu = vector_from(j.at("nu"));
    s.v = vector_from(j.at("v"));
    s.multiplier = vector_from(j.at("multiplier"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed state JSON: ") + e.what());
  }
}

std::string report_json(const ConvergenceReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["degree"] = r.degree;
  j["smoothness"] = r.smoothness;
  j["t_final"] = r.t_final;
  j["levels"] = r.levels;
  j["reference_level"] = r.levels.empty() ? 0 : r.levels.back();
  for (const auto& e : r.errors) {
    nlohmann::json l;
    l["elements"] = e.elements;
    l["dt"] = e.dt;
    for (const auto& [name, d] : {std::pair{"position", e.position}, {"curvature", e.curvature}, {"normal", e.normal}})
      l[name] = {{"l2", d.l2}, {"h1", d.h1}};
    j["errors"].push_back(l);
  }
  for (const char* var : {"position", "curvature", "normal"})
    for (bool h1 : {false, true}) {
      const auto rate = r.rate(var, h1);
      j["eoc"][var][h1 ? "h1" : "l2"] = {{"pairwise", rate.pairwise}, {"fitted", rate.fitted}};
    }
  return j.dump(2);
}

}  // namespace igamcf
