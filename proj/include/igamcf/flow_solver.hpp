#pragma once

#include <Eigen/Dense>

#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "igamcf/assembly.hpp"
#include "igamcf/boundary_data.hpp"
#include "igamcf/linear_solvers.hpp"
#include "igamcf/projections.hpp"
#include "igamcf/scenarios.hpp"
#include "igamcf/spline_field.hpp"
#include "igamcf/spline_spaces.hpp"

namespace igamcf {

/// delta(z) = sum_{l=1..q} (1/l)(1-z)^l, gamma(z) = (1 - (1-z)^q) / z.
struct BdfCoefficients {
  int order = 0;
  std::vector<double> delta;  // delta_0 .. delta_q
  std::vector<double> gamma;  // gamma_0 .. gamma_{q-1}
};
BdfCoefficients bdf_coefficients(int q);

/// (1/dt) sum_j delta_j y[j], with y[0] the newest value.
Eigen::VectorXd bdf_derivative(const BdfCoefficients& c, const std::vector<Eigen::VectorXd>& newest_first, double dt);
/// sum_j gamma_j y[j], with y[0] the newest value.
Eigen::VectorXd bdf_extrapolate(const BdfCoefficients& c, const std::vector<Eigen::VectorXd>& newest_first);

/// One time level. kappa holds the interior (zero-trace) coefficients only;
/// x, nu, v are flat 3N vectors; multiplier has one entry per constraint row.
struct FlowState {
  double time = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd kappa;
  Eigen::VectorXd nu;
  Eigen::VectorXd v;
  Eigen::VectorXd multiplier;
};

/// BDF order, coefficients and the last `order` states, newest first.
class BdfScheme {
 public:
  explicit BdfScheme(int order);

  int order() const { return coefficients_.order; }
  const BdfCoefficients& coefficients() const { return coefficients_; }
  const std::deque<FlowState>& history() const { return history_; }
  bool ready() const { return static_cast<int>(history_.size()) >= order(); }
  void push(FlowState state);

 private:
  BdfCoefficients coefficients_;
  std::deque<FlowState> history_;
};

struct StepDiagnostics {
  double time = 0.0;
  double area = 0.0;
  double max_abs_kappa = 0.0;
  /// ||S nu||_inf
  double constraint_residual = 0.0;
  std::vector<double> solver_residuals;
  double wallclock_s = 0.0;

  double max_solver_residual() const;
};

/// Everything fixed over a run: the space, the projectors, the initial
/// surface, the boundary splines and the constraint matrix.
class FlowProblem {
 public:
  FlowProblem(Scenario scenario, int degree, int smoothness, int elements, RitzConfig ritz = {},
              double solver_tolerance = kSolverTolerance, CornerConstraint corners = CornerConstraint::split);

  const Scenario& scenario() const { return scenario_; }
  const SpacePtr& space_ptr() const { return space_; }
  const TensorSplineSpace& space() const { return *space_; }
  const QuasiInterpolant& quasi_interpolant() const { return Q_; }
  const BoundaryTrace& trace() const { return trace_; }
  const BoundaryData& boundary_data() const { return bd_; }
  const SparseMatrix& constraint() const { return S_; }
  const SplineField& initial_position() const { return x0_; }
  /// p+1 points per direction: matrices and loads.
  const ParametricMesh& assembly_mesh() const { return assembly_mesh_; }
  /// p+2 points per direction: area and other diagnostics.
  const ParametricMesh& diagnostic_mesh() const { return diagnostic_mesh_; }
  const RitzConfig& ritz_config() const { return ritz_; }
  double solver_tolerance() const { return tol_; }
  CornerConstraint corner_constraint() const { return corners_; }

  struct Initialization {
    FlowState state;
    RitzResult ritz;
  };
  /// x = Q X0, kappa = Q kappa0 with zeroed boundary, nu = nonlinear Ritz of nu0,
  /// v = Q(-kappa nu) with zeroed boundary.
  Initialization initialize() const;

  /// One linearly implicit step from scheme.history(). When dump_prefix is
  /// non-empty the step's matrices are written as <prefix><name>.mtx.
  std::pair<FlowState, StepDiagnostics> step(const BdfScheme& scheme, double dt,
                                             const std::string& dump_prefix = "") const;

  StepDiagnostics diagnose(const FlowState& s) const;

  SplineField position(const FlowState& s) const { return SplineField::from_flat(space_, 3, s.x); }
  SplineField normal(const FlowState& s) const { return SplineField::from_flat(space_, 3, s.nu); }
  SplineField velocity(const FlowState& s) const { return SplineField::from_flat(space_, 3, s.v); }
  /// Full-space scalar field with zero boundary coefficients.
  SplineField curvature(const FlowState& s) const { return extend_zero_trace(space_, s.kappa); }

 private:
  Scenario scenario_;
  SpacePtr space_;
  QuasiInterpolant Q_;
  BoundaryTrace trace_;
  ParametricMesh assembly_mesh_;
  ParametricMesh diagnostic_mesh_;
  RitzConfig ritz_;
  double tol_;
  CornerConstraint corners_;
  SplineField x0_;
  BoundaryData bd_;
  SparseMatrix S_;
};

struct RunOptions {
  double dt = 0.0;
  double t_final = 0.0;
  int bdf_order = 2;
  /// Snapshot every k-th step (and the initial state); 0 disables.
  int snapshot_stride = 0;
  /// Directory for per-step MatrixMarket dumps; empty disables.
  std::string dump_matrices_dir;
  /// Called after the initial state and after every step.
  std::function<void(const FlowState&, const StepDiagnostics&)> on_step;
};

struct RunResult {
  std::vector<StepDiagnostics> diagnostics;  // t = 0 first
  std::vector<FlowState> snapshots;
  FlowState final_state;
  RitzResult ritz;
  bool aborted = false;
  std::string abort_reason;
};

/// Number of steps K with K dt = t_final; throws InvalidArgument otherwise.
int step_count(double dt, double t_final);

/// BDF1 startup step when order 2 is requested, then the requested order up
/// to t_final. SolverFailure and DegenerateSurface stop the run: aborted is
/// set and final_state is the last good state.
RunResult run(const FlowProblem& problem, const RunOptions& options);

}  // namespace igamcf
