#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "surfvortex/greens.hpp"
#include "surfvortex/homology.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {

/// Everything the equations of motion need about one surface.
struct VortexModel {
  std::shared_ptr<const Surface> surface;
  std::shared_ptr<const GreenModel> green;
  HarmonicBasis basis;
  PeriodMatrix periods;
  /// How A and B obtain the conjugate periods of *dG^omega.
  PeriodEvaluation period_evaluation = PeriodEvaluation::Auto;

  /// Built-in Green model, harmonic basis and period matrix for `surface`.
  static VortexModel make(std::shared_ptr<const Surface> surface);

  int genus() const { return basis.genus(); }
};

/// Point in phase space: vortex positions and strengths, circulations a, b
/// around the cycle representatives in `cycles`, and time.
struct PhaseState {
  std::vector<PointVortex> vortices;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  double t = 0.0;
  CyclePlacement cycles;

  double total_strength() const;
  std::vector<ChartPoint> positions() const;
};

/// Harmonic part of the flow, eta = -A dU_beta + B dU_alpha.
struct CirculationState {
  Eigen::VectorXd A;
  Eigen::VectorXd B;
};

inline constexpr double kCollisionDistance = 1e-8;

/// Checks vector lengths and pairwise separation; throws on violation.
void validate_state(const VortexModel& m, const PhaseState& st);

/// A = a + oint_alpha *dG^omega, B = b + oint_beta *dG^omega.
CirculationState circulation_state(const VortexModel& m, const PhaseState& st);

/// 2H = sum Gamma_k^2 R_robin(w_k) + sum_{k != j} Gamma_k Gamma_j G(w_k, w_j)
///      + (A; B)^T [P R; R^T Q] (A; B).
double hamiltonian(const VortexModel& m, const PhaseState& st);

/// dw_k/dt in each vortex's own chart.
std::vector<Complex> vortex_velocities(const VortexModel& m, const PhaseState& st);
std::vector<Complex> vortex_velocities(const VortexModel& m, const PhaseState& st,
                                       const CirculationState& cs);

struct CirculationRates {
  Eigen::VectorXd a_dot;
  Eigen::VectorXd b_dot;
};

/// (a', b') = (Gamma / V) (-R^T -Q; P R) (A; B).
CirculationRates circulation_rates(const PeriodMatrix& pm, const CirculationState& cs,
                                   double volume, double total_strength);

/// Flow one-form nu = eta - *dG^omega at z.
Covector flow_field(const VortexModel& m, const PhaseState& st, const CirculationState& cs,
                    const ChartPoint& z);

// ---------------------------------------------------------------------------
// Time integration

enum class Scheme { RK4, Midpoint };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct IntegrateOptions {
  Scheme scheme = Scheme::RK4;
  double dt = 1e-3;
  /// Record every `stride`-th step (the final state is always recorded).
  int stride = 1;
  /// Right-hand side multiplier; -1 runs the flow backwards.
  double time_scale = 1.0;
  /// Re-place cycle representatives when a vortex comes closer than this
  /// (chart units).
  double cycle_margin = 0.05;
  double midpoint_tolerance = 1e-14;
  int midpoint_max_iterations = 50;
};

/// Cycle representatives moved and (a, b) re-expressed so that A, B stay
/// unchanged.
struct RebaselineEvent {
  double t = 0.0;
  CyclePlacement from;
  CyclePlacement to;
  Eigen::VectorXd a_before, b_before;
  Eigen::VectorXd a_after, b_after;
};

struct Trajectory {
  std::vector<PhaseState> states;
  std::vector<double> energy;
  std::vector<RebaselineEvent> rebaselines;

  double max_relative_energy_drift() const;
};

/// Single-step driver; integrate() is a loop over it.
class Stepper {
 public:
  Stepper(const VortexModel& model, PhaseState initial, IntegrateOptions options);

  const PhaseState& state() const { return state_; }
  const IntegrateOptions& options() const { return options_; }
  const std::vector<RebaselineEvent>& rebaselines() const { return rebaselines_; }

  /// Advances by options().dt. Throws CollisionError / StepFailure.
  void step();

  /// Time derivative of the packed state (x_k, y_k, ..., a, b) with charts
  /// and cycles taken from `frame`.
  Eigen::VectorXd rhs(const PhaseState& frame, const Eigen::VectorXd& y) const;

 private:
  Eigen::VectorXd pack(const PhaseState& st) const;
  PhaseState unpack(const PhaseState& frame, const Eigen::VectorXd& y) const;
  void maybe_rebaseline();

  const VortexModel& model_;
  PhaseState state_;
  IntegrateOptions options_;
  std::vector<RebaselineEvent> rebaselines_;
};

/// Integrates for total time T (number of steps = round(T / dt)).
Trajectory integrate(const VortexModel& model, const PhaseState& initial, double T,
                     const IntegrateOptions& options = {});

}  // namespace surfvortex
