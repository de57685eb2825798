#include "surfvortex/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"

namespace surfvortex {
namespace {

// Circulations are not stepped when the total strength is zero up to
// round-off in sum(Gamma_k).
bool vanishing_total(const PhaseState& st) {
  double scale = 0.0;
  for (const auto& v : st.vortices) scale += std::abs(v.strength);
  return std::abs(st.total_strength()) <= 1e-14 * scale;
}

}  // namespace

VortexModel VortexModel::make(std::shared_ptr<const Surface> surface) {
  VortexModel m;
  m.surface = surface;
  m.green = make_green_model(surface);
  if (!m.green) throw Error("VortexModel: no Green model registered for " + surface->name());
  m.basis = harmonic_basis(surface);
  m.periods = period_matrix(m.basis);
  return m;
}

double PhaseState::total_strength() const {
  double s = 0.0;
  for (const auto& v : vortices) s += v.strength;
  return s;
}

std::vector<ChartPoint> PhaseState::positions() const {
  std::vector<ChartPoint> out;
  out.reserve(vortices.size());
  for (const auto& v : vortices) out.push_back(v.position);
  return out;
}

void validate_state(const VortexModel& m, const PhaseState& st) {
  const int g = m.genus();
  if (st.a.size() != g || st.b.size() != g) {
    throw Error("phase state: circulation vectors must have length " + std::to_string(g));
  }
  if (g > 0 && (static_cast<int>(st.cycles.alpha.size()) != g ||
                static_cast<int>(st.cycles.beta.size()) != g)) {
    throw Error("phase state: cycle placement does not match the genus");
  }
  for (std::size_t k = 0; k < st.vortices.size(); ++k) {
    for (std::size_t j = k + 1; j < st.vortices.size(); ++j) {
      const double d =
          std::abs(m.surface->relative_coordinate(st.vortices[j].position, st.vortices[k].position));
      if (d < kCollisionDistance) {
        throw CollisionError("vortices " + std::to_string(k) + " and " + std::to_string(j) +
                             " collided (separation " + std::to_string(d) + ")");
      }
    }
  }
}

CirculationState circulation_state(const VortexModel& m, const PhaseState& st) {
  const int g = m.genus();
  if (g == 0) return {Eigen::VectorXd(0), Eigen::VectorXd(0)};
  const ConjugatePeriods cp =
      conjugate_green_periods(*m.green, m.basis, st.vortices, st.cycles, m.period_evaluation);
  return {st.a + cp.alpha, st.b + cp.beta};
}

double hamiltonian(const VortexModel& m, const PhaseState& st) {
  const auto& vs = st.vortices;
  double twice = 0.0;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    twice += vs[k].strength * vs[k].strength * m.green->robin(vs[k].position);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (j != k) {
        twice += vs[k].strength * vs[j].strength * m.green->green(vs[k].position, vs[j].position);
      }
    }
  }
  if (m.genus() > 0) {
    const CirculationState cs = circulation_state(m, st);
    Eigen::VectorXd ab(2 * m.genus());
    ab << cs.A, cs.B;
    twice += ab.dot(m.periods.assembled() * ab);
  }
  return 0.5 * twice;
}

std::vector<Complex> vortex_velocities(const VortexModel& m, const PhaseState& st) {
  return vortex_velocities(m, st, circulation_state(m, st));
}

std::vector<Complex> vortex_velocities(const VortexModel& m, const PhaseState& st,
                                       const CirculationState& cs) {
  const auto& vs = st.vortices;
  const Surface& s = *m.surface;
  std::vector<Complex> out(vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const ChartPoint& w = vs[k].position;
    const double lam = s.density(w);
    const Complex h1 = m.green->regular_coeffs(w).h1;
    // d/dwbar log lambda = conj(r) / 2
    Complex rhs = vs[k].strength / (2.0 * kPi * kI) * (std::conj(h1) + 0.5 * std::conj(s.affine(w)));
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (j == k || vs[j].strength == 0.0) continue;
      rhs += -2.0 * kI * vs[j].strength * std::conj(m.green->gradient(w, vs[j].position));
    }
    for (int j = 0; j < m.genus(); ++j) {
      rhs += 2.0 * (cs.B(j) * m.basis.d_alpha(j, w).dzbar() - cs.A(j) * m.basis.d_beta(j, w).dzbar());
    }
    out[k] = rhs / (lam * lam);
  }
  return out;
}

CirculationRates circulation_rates(const PeriodMatrix& pm, const CirculationState& cs,
                                   double volume, double total_strength) {
  const double f = total_strength / volume;
  return {f * (-pm.R.transpose() * cs.A - pm.Q * cs.B), f * (pm.P * cs.A + pm.R * cs.B)};
}

Covector flow_field(const VortexModel& m, const PhaseState& st, const CirculationState& cs,
                    const ChartPoint& z) {
  Covector nu{};
  for (int j = 0; j < m.genus(); ++j) {
    nu = nu - cs.A(j) * m.basis.d_beta(j, z) + cs.B(j) * m.basis.d_alpha(j, z);
  }
  for (const auto& v : st.vortices) {
    if (v.strength != 0.0) nu = nu - v.strength * star_dG(*m.green, z, v.position);
  }
  return nu;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::RK4;
  if (name == "midpoint") return Scheme::Midpoint;
  throw Error("unknown integration scheme '" + name + "' (expected rk4 or midpoint)");
}

std::string to_string(Scheme s) { return s == Scheme::RK4 ? "rk4" : "midpoint"; }

double Trajectory::max_relative_energy_drift() const {
  if (energy.empty()) return 0.0;
  const double h0 = energy.front();
  const double scale = std::abs(h0) > 0.0 ? std::abs(h0) : 1.0;
  double worst = 0.0;
  for (double h : energy) worst = std::max(worst, std::abs(h - h0) / scale);
  return worst;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const VortexModel& model, PhaseState initial, IntegrateOptions options)
    : model_(model), state_(std::move(initial)), options_(options) {
  if (!(options_.dt > 0.0)) throw Error("integrate: dt must be positive");
  if (options_.stride < 1) throw Error("integrate: stride must be at least 1");
  if (model_.genus() > 0 && state_.cycles.alpha.empty()) {
    state_.cycles = model_.basis.default_placement();
  }
  for (auto& v : state_.vortices) v.position = model_.surface->canonical(v.position);
  validate_state(model_, state_);
}

Eigen::VectorXd Stepper::pack(const PhaseState& st) const {
  const int n = static_cast<int>(st.vortices.size());
  const int g = model_.genus();
  Eigen::VectorXd y(2 * n + 2 * g);
  for (int k = 0; k < n; ++k) {
    y(2 * k) = st.vortices[k].position.z.real();
    y(2 * k + 1) = st.vortices[k].position.z.imag();
  }
  if (g > 0) {
    y.segment(2 * n, g) = st.a;
    y.segment(2 * n + g, g) = st.b;
  }
  return y;
}

PhaseState Stepper::unpack(const PhaseState& frame, const Eigen::VectorXd& y) const {
  PhaseState st = frame;
  const int n = static_cast<int>(st.vortices.size());
  const int g = model_.genus();
  for (int k = 0; k < n; ++k) st.vortices[k].position.z = Complex(y(2 * k), y(2 * k + 1));
  if (g > 0) {
    st.a = y.segment(2 * n, g);
    st.b = y.segment(2 * n + g, g);
  }
  return st;
}

Eigen::VectorXd Stepper::rhs(const PhaseState& frame, const Eigen::VectorXd& y) const {
  const PhaseState st = unpack(frame, y);
  const CirculationState cs = circulation_state(model_, st);
  const auto vel = vortex_velocities(model_, st, cs);
  const int n = static_cast<int>(vel.size());
  const int g = model_.genus();
  Eigen::VectorXd dy = Eigen::VectorXd::Zero(y.size());
  for (int k = 0; k < n; ++k) {
    dy(2 * k) = vel[k].real();
    dy(2 * k + 1) = vel[k].imag();
  }
  if (g > 0 && !vanishing_total(st)) {
    const auto rates =
        circulation_rates(model_.periods, cs, model_.surface->volume(), st.total_strength());
    dy.segment(2 * n, g) = rates.a_dot;
    dy.segment(2 * n + g, g) = rates.b_dot;
  }
  return options_.time_scale * dy;
}

void Stepper::maybe_rebaseline() {
  if (model_.genus() == 0) return;
  const auto positions = state_.positions();
  if (model_.basis.clearance(state_.cycles, positions) >= options_.cycle_margin) return;
  const CyclePlacement next = model_.basis.place_cycles(positions);
  const CirculationState cs = circulation_state(model_, state_);
  const ConjugatePeriods cp =
      conjugate_green_periods(*model_.green, model_.basis, state_.vortices, next,
                              model_.period_evaluation);
  RebaselineEvent ev;
  ev.t = state_.t;
  ev.from = state_.cycles;
  ev.to = next;
  ev.a_before = state_.a;
  ev.b_before = state_.b;
  state_.cycles = next;
  state_.a = cs.A - cp.alpha;
  state_.b = cs.B - cp.beta;
  ev.a_after = state_.a;
  ev.b_after = state_.b;
  rebaselines_.push_back(std::move(ev));
}

void Stepper::step() {
  maybe_rebaseline();
  const double h = options_.dt;
  const PhaseState& frame = state_;
  const Eigen::VectorXd y0 = pack(frame);
  Eigen::VectorXd y1;
  if (options_.scheme == Scheme::RK4) {
    const Eigen::VectorXd k1 = rhs(frame, y0);
    const Eigen::VectorXd k2 = rhs(frame, y0 + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(frame, y0 + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(frame, y0 + h * k3);
    y1 = y0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } else {
    y1 = y0 + h * rhs(frame, y0);
    double delta = 0.0;
    for (int it = 0; it < options_.midpoint_max_iterations; ++it) {
      const Eigen::VectorXd next = y0 + h * rhs(frame, 0.5 * (y0 + y1));
      delta = (next - y1).lpNorm<Eigen::Infinity>();
      y1 = next;
      if (delta <= options_.midpoint_tolerance * std::max(1.0, y1.lpNorm<Eigen::Infinity>())) {
        break;
      }
    }
    if (!(delta <= 1e-10 * std::max(1.0, y1.lpNorm<Eigen::Infinity>()))) {
      throw StepFailure("implicit midpoint: fixed-point iteration did not converge at t=" +
                        std::to_string(state_.t));
    }
  }
  if (!y1.allFinite()) {
    throw StepFailure("integrate: non-finite state at t=" + std::to_string(state_.t));
  }
  PhaseState next = unpack(frame, y1);
  for (auto& v : next.vortices) v.position = model_.surface->canonical(v.position);
  next.t = state_.t + h;
  validate_state(model_, next);
  state_ = std::move(next);
}

Trajectory integrate(const VortexModel& model, const PhaseState& initial, double T,
                     const IntegrateOptions& options) {
  if (!(T >= 0.0)) throw Error("integrate: T must be nonnegative");
  Stepper stepper(model, initial, options);
  const long steps = std::lround(T / options.dt);
  Trajectory traj;
  traj.states.push_back(stepper.state());
  traj.energy.push_back(hamiltonian(model, stepper.state()));
  for (long n = 1; n <= steps; ++n) {
    stepper.step();
    if (n % options.stride == 0 || n == steps) {
      traj.states.push_back(stepper.state());
      traj.energy.push_back(hamiltonian(model, stepper.state()));
    }
  }
  traj.rebaselines = stepper.rebaselines();
  return traj;
}

}  // namespace surfvortex
