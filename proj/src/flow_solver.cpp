#include "igamcf/flow_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "igamcf/errors.hpp"
#include "igamcf/surface_geometry.hpp"

namespace igamcf {

BdfCoefficients bdf_coefficients(int q) {
  switch (q) {
    case 1:
      return {1, {1.0, -1.0}, {1.0}};
    case 2:
      return {2, {1.5, -2.0, 0.5}, {2.0, -1.0}};
    default:
      throw InvalidArgument("BDF order must be 1 or 2");
  }
}

Eigen::VectorXd bdf_derivative(const BdfCoefficients& c, const std::vector<Eigen::VectorXd>& y, double dt) {
  if (static_cast<int>(y.size()) != c.order + 1) throw InvalidArgument("BDF derivative needs order + 1 values");
  Eigen::VectorXd d = c.delta[0] * y[0];
  for (int j = 1; j <= c.order; ++j) d += c.delta[j] * y[j];
  return d / dt;
}

Eigen::VectorXd bdf_extrapolate(const BdfCoefficients& c, const std::vector<Eigen::VectorXd>& y) {
  if (static_cast<int>(y.size()) != c.order) throw InvalidArgument("BDF extrapolation needs order values");
  Eigen::VectorXd e = c.gamma[0] * y[0];
  for (int j = 1; j < c.order; ++j) e += c.gamma[j] * y[j];
  return e;
}

BdfScheme::BdfScheme(int order) : coefficients_(bdf_coefficients(order)) {}

void BdfScheme::push(FlowState state) {
  history_.push_front(std::move(state));
  while (static_cast<int>(history_.size()) > order()) history_.pop_back();
}

double StepDiagnostics::max_solver_residual() const {
  double r = 0.0;
  for (double x : solver_residuals) r = std::max(r, x);
  return r;
}

FlowProblem::FlowProblem(Scenario scenario, int degree, int smoothness, int elements, RitzConfig ritz,
                         double solver_tolerance, CornerConstraint corners)
    : scenario_(std::move(scenario)),
      space_(build_space(degree, smoothness, elements)),
      Q_(space_),
      trace_(space_),
      assembly_mesh_(elements, degree + 1),
      diagnostic_mesh_(elements, degree + 2),
      ritz_(ritz),
      tol_(solver_tolerance),
      corners_(corners),
      x0_(space_, Q_.apply([this](double u, double v) -> Eigen::VectorXd { return scenario_.surface.position(u, v); },
                           3)),
      bd_(boundary_quasi_interp(trace_, scenario_.surface.boundary())),
      S_(assemble_constraint_S(trace_, x0_, bd_, degree + 1, corners)) {}

FlowProblem::Initialization FlowProblem::initialize() const {
  const AnalyticSurface& s = scenario_.surface;
  FlowState st;
  st.x = x0_.flat();
  const SplineField kappa(space_, Q_.apply(
                                      [this](double u, double v) {
                                        return Eigen::VectorXd::Constant(1, scenario_.mean_curvature(u, v));
                                      },
                                      1, BoundaryMode::zero));
  st.kappa = interior_part(kappa);
  RitzResult ritz =
      nonlinear_ritz_normal(x0_, trace_, S_, bd_, Q_, s.as_parametric(), s.boundary(), s.normal_field(), ritz_);
  st.nu = ritz.normal.flat();
  st.multiplier = ritz.multiplier;
  st.v = project_velocity(Q_, kappa, ritz.normal).flat();
  return {std::move(st), std::move(ritz)};
}

std::pair<FlowState, StepDiagnostics> FlowProblem::step(const BdfScheme& scheme, double dt,
                                                         const std::string& dump_prefix) const {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  if (!scheme.ready()) throw InvalidArgument("BDF history is shorter than the scheme order");
  const auto t0 = std::chrono::steady_clock::now();
  const BdfCoefficients& c = scheme.coefficients();
  const auto& H = scheme.history();
  const int q = c.order;

  auto column = [&](auto member) {
    std::vector<Eigen::VectorXd> out;
    for (int j = 0; j < q; ++j) out.push_back(H[j].*member);
    return out;
  };
  // Past-value part of the BDF derivative: sum_{j>=1} delta_j y^{k-j}.
  auto history_sum = [&](const std::vector<Eigen::VectorXd>& y) {
    Eigen::VectorXd s = c.delta[1] * y[0];
    for (int j = 2; j <= q; ++j) s += c.delta[j] * y[j - 1];
    return s;
  };
  const auto xs = column(&FlowState::x);
  const auto ks = column(&FlowState::kappa);
  const auto ns = column(&FlowState::nu);

  // (1) extrapolation
  const SplineField Xt = SplineField::from_flat(space_, 3, bdf_extrapolate(c, xs));
  const SplineField Nt = SplineField::from_flat(space_, 3, bdf_extrapolate(c, ns));
  const SplineField Kt = extend_zero_trace(space_, bdf_extrapolate(c, ks));

  // (2) assembly on the extrapolated surface
  const MassStiffness ms = assemble_mass_stiffness(Xt, assembly_mesh_);
  const Eigen::VectorXd f1 = assemble_f1(Xt, Kt, Nt, assembly_mesh_);
  const NormalLoads loads = assemble_f2_fb(trace_, Xt, Nt, bd_, assembly_mesh_, space_->degree() + 1);

  StepDiagnostics d;
  FlowState next;
  next.time = H[0].time + dt;

  // (3) curvature
  const SparseMatrix K0 = (c.delta[0] / dt) * ms.mass_zero_trace + ms.stiffness_zero_trace;
  double r = 0.0;
  next.kappa = SpdSolver(K0, tol_).solve(f1 - ms.mass_zero_trace * history_sum(ks) / dt, &r);
  d.solver_residuals.push_back(r);

  // (4) normal with the tangential boundary constraint
  const SparseMatrix M3 = block_diagonal3(ms.mass);
  const SparseMatrix Kn = (c.delta[0] / dt) * M3 + block_diagonal3(ms.stiffness);
  const SaddleSolver::Solution sol =
      SaddleSolver(Kn, S_, tol_).solve(loads.f2 + loads.fb - M3 * history_sum(ns) / dt);
  next.nu = sol.primal;
  next.multiplier = sol.multiplier;
  d.solver_residuals.push_back(sol.residual);

  // (5) velocity
  const SplineField kappa = extend_zero_trace(space_, next.kappa);
  next.v = project_velocity(Q_, kappa, SplineField::from_flat(space_, 3, next.nu)).flat();

  // (6) position; the boundary curve stays where it started
  next.x = (dt * next.v - history_sum(xs)) / c.delta[0];
  const int n = space_->dim();
  for (int idx : space_->boundary_indices())
    for (int k = 0; k < 3; ++k) next.x[k * n + idx] = x0_.coeffs()(idx, k);

  if (!dump_prefix.empty()) {
    write_matrix_market(dump_prefix + "mass.mtx", ms.mass);
    write_matrix_market(dump_prefix + "stiffness.mtx", ms.stiffness);
    write_matrix_market(dump_prefix + "curvature_system.mtx", K0);
    write_matrix_market(dump_prefix + "normal_system.mtx", Kn);
    write_matrix_market(dump_prefix + "constraint.mtx", S_);
  }

  StepDiagnostics full = diagnose(next);
  full.solver_residuals = std::move(d.solver_residuals);
  full.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(next), std::move(full)};
}

StepDiagnostics FlowProblem::diagnose(const FlowState& s) const {
  StepDiagnostics d;
  d.time = s.time;
  d.area = surface_area(position(s), diagnostic_mesh_);
  d.constraint_residual = (S_ * s.nu).lpNorm<Eigen::Infinity>();
  const SplineField kappa = curvature(s);
  const ElementBasis basis(*space_, diagnostic_mesh_);
  const int ne = diagnostic_mesh_.num_elements(), nq = diagnostic_mesh_.points();
  Eigen::VectorXd val, du, dv;
  for (int e2 = 0; e2 < ne; ++e2)
    for (int e1 = 0; e1 < ne; ++e1) {
      const std::vector<int> dofs = space_->element_dofs(e1, e2);
      for (int q2 = 0; q2 < nq; ++q2)
        for (int q1 = 0; q1 < nq; ++q1) {
          basis.evaluate(e1, e2, q1, q2, val, du, dv);
          double k = 0.0;
          for (size_t a = 0; a < dofs.size(); ++a) k += val[a] * kappa.coeffs()(dofs[a], 0);
          d.max_abs_kappa = std::max(d.max_abs_kappa, std::abs(k));
        }
    }
  return d;
}

int step_count(double dt, double t_final) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw InvalidArgument("need dt > 0 and t_final >= 0");
  const double k = std::round(t_final / dt);
  if (std::abs(k * dt - t_final) > 1e-9 * std::max(1.0, t_final))
    throw InvalidArgument("t_final must be an integer multiple of dt");
  return static_cast<int>(k);
}

RunResult run(const FlowProblem& problem, const RunOptions& opt) {
  const int steps = step_count(opt.dt, opt.t_final);
  bdf_coefficients(opt.bdf_order);  // validates the order
  RunResult res;
  const auto t0 = std::chrono::steady_clock::now();
  FlowProblem::Initialization init = problem.initialize();
  res.ritz = std::move(init.ritz);
  StepDiagnostics d0 = problem.diagnose(init.state);
  d0.wallclock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.diagnostics.push_back(d0);
  if (opt.on_step) opt.on_step(init.state, d0);
  if (opt.snapshot_stride > 0) res.snapshots.push_back(init.state);
  if (!opt.dump_matrices_dir.empty()) std::filesystem::create_directories(opt.dump_matrices_dir);

  BdfScheme startup(1);
  BdfScheme scheme(opt.bdf_order);
  startup.push(init.state);
  scheme.push(init.state);
  res.final_state = std::move(init.state);
  for (int k = 1; k <= steps; ++k) {
    std::string prefix;
    if (!opt.dump_matrices_dir.empty()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "step_%05d_", k);
      prefix = (std::filesystem::path(opt.dump_matrices_dir) / buf).string();
    }
    try {
      auto [state, diag] = problem.step(scheme.ready() ? scheme : startup, opt.dt, prefix);
      res.diagnostics.push_back(diag);
      if (opt.on_step) opt.on_step(state, diag);
      if (opt.snapshot_stride > 0 && k % opt.snapshot_stride == 0) res.snapshots.push_back(state);
      startup.push(state);
      scheme.push(state);
      res.final_state = std::move(state);
    } catch (const SolverFailure& e) {
      res.aborted = true;
      res.abort_reason = e.what();
      break;
    } catch (const DegenerateSurface& e) {
      res.aborted = true;
      res.abort_reason = e.what();
      break;
    }
  }
  return res;
}

}  // namespace igamcf
