#include "surfvortex/pairlab.hpp"

#include <cmath>
#include <future>
#include <string>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"

namespace surfvortex {
namespace {

constexpr double kDerivativeStep = 1e-4;

// Chart velocity of vortex k expressed in `chart`.
Complex velocity_in_chart(const Surface& s, const ChartPoint& p, Complex v, int chart) {
  if (p.chart == chart) return v;
  return v * s.transition(p.chart, chart).derivative(p.z, 1);
}

}  // namespace

CenterArrow center_arrow(const Surface& s, const ChartPoint& w1, const ChartPoint& w2) {
  const ChartPoint p2{w1.chart, w1.z - s.relative_coordinate(w1, w2)};
  return CenterArrow{ChartPoint{w1.chart, 0.5 * (w1.z + p2.z)}, 0.5 * (w1.z - p2.z)};
}

PairDiagnostics pair_diagnostics(const VortexModel& m, const std::vector<PhaseState>& states,
                                 double dt) {
  const Surface& s = *m.surface;
  PairDiagnostics d;
  if (states.empty()) return d;
  double arc = 0.0;
  std::vector<ChartPoint> centers;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const PhaseState& st = states[n];
    if (st.vortices.size() != 2) throw Error("pair_diagnostics: expected exactly two vortices");
    const auto& v1 = st.vortices[0];
    const auto& v2 = st.vortices[1];
    if (std::abs(v1.strength + v2.strength) > 1e-12 * std::abs(v1.strength)) {
      throw Error("pair_diagnostics: strengths must be +Gamma_1 and -Gamma_1");
    }
    const CenterArrow ca = center_arrow(s, v1.position, v2.position);
    const auto vel = vortex_velocities(m, st);
    const int chart = ca.center.chart;
    const Complex wdot = 0.5 * (velocity_in_chart(s, v1.position, vel[0], chart) +
                                velocity_in_chart(s, v2.position, vel[1], chart));
    if (std::abs(wdot) == 0.0) throw Error("pair_diagnostics: centre velocity vanishes");
    PairSample sample;
    sample.t = st.t;
    sample.center = ca.center;
    if (!centers.empty()) arc += s.distance(centers.back(), sample.center);
    sample.arc_length = arc;
    sample.arrow = ca.arrow;
    sample.u_lambda = std::abs(ca.arrow) * s.density(ca.center);
    sample.angle = numerics::wrap_angle(std::arg(ca.arrow) - std::arg(wdot));
    centers.push_back(sample.center);
    d.samples.push_back(sample);
  }
  const double sign = states.front().vortices[0].strength > 0.0 ? 1.0 : -1.0;
  const double ul0 = d.samples.front().u_lambda;
  for (const auto& p : d.samples) {
    d.u_lambda_drift = std::max(d.u_lambda_drift, std::abs(p.u_lambda - ul0) / ul0);
    d.angle_defect =
        std::max(d.angle_defect, std::abs(numerics::wrap_angle(p.angle - sign * 0.5 * kPi)));
  }
  if (centers.size() >= 5) d.center_residual = geodesic_residual(s, centers, dt);
  return d;
}

PairDiagnostics run_pair(const PairRun& run, double eps) {
  if (!run.model) throw Error("run_pair: missing model");
  if (!(eps > 0.0)) throw Error("run_pair: eps must be positive");
  const VortexModel& m = *run.model;
  const Surface& s = *m.surface;
  if (std::abs(run.direction) == 0.0) throw Error("run_pair: zero direction");
  const ChartChange cc = s.recenter(run.center);
  const ChartPoint c0 = cc.point;
  Complex u0 = run.direction * cc.jacobian;
  u0 /= std::abs(u0);

  PhaseState st;
  st.vortices = {{ChartPoint{c0.chart, c0.z + eps * u0}, run.strength},
                 {ChartPoint{c0.chart, c0.z - eps * u0}, -run.strength}};
  st.a = Eigen::VectorXd::Zero(m.genus());
  st.b = Eigen::VectorXd::Zero(m.genus());
  if (m.genus() > 0) st.cycles = m.basis.place_cycles(st.positions());

  IntegrateOptions opt;
  opt.scheme = run.scheme;
  opt.dt = run.dt;
  opt.time_scale = eps;
  Stepper stepper(m, st, opt);

  std::vector<PhaseState> states{stepper.state()};
  double arc = 0.0;
  ChartPoint last = c0;
  long steps = 0;
  while (arc < run.window) {
    if (++steps > run.max_steps) {
      throw StepFailure("run_pair: window not reached within " + std::to_string(run.max_steps) +
                        " steps at eps=" + std::to_string(eps));
    }
    stepper.step();
    states.push_back(stepper.state());
    const auto& v = states.back().vortices;
    const ChartPoint mid = center_arrow(s, v[0].position, v[1].position).center;
    arc += s.distance(last, mid);
    last = mid;
  }

  PairDiagnostics diag = pair_diagnostics(m, states, run.dt);

  // comparison geodesic from the initial centre, unit metric speed
  const ChartPoint start = diag.samples.front().center;
  Complex dir;
  if (run.start == GeodesicStart::MatchedVelocity) {
    const auto& v = states.front().vortices;
    const auto vel = vortex_velocities(m, states.front());
    dir = 0.5 * (velocity_in_chart(s, v[0].position, vel[0], start.chart) +
                 velocity_in_chart(s, v[1].position, vel[1], start.chart));
  } else {
    const Complex u_start =
        c0.chart == start.chart ? u0 : u0 * s.transition(c0.chart, start.chart).derivative(c0.z, 1);
    dir = (run.strength > 0.0 ? -kI : kI) * u_start;
  }
  const Complex unit = dir / (std::abs(dir) * s.density(start));
  for (auto& p : diag.samples) {
    p.deviation = s.distance(p.center, s.exp_map(start, p.arc_length * unit));
    diag.deviation = std::max(diag.deviation, p.deviation);
  }
  return diag;
}

std::vector<KimuraRow> kimura_deviation(const PairRun& run) {
  for (std::size_t i = 1; i < run.eps.size(); ++i) {
    if (!(run.eps[i] < run.eps[i - 1])) {
      throw Error("kimura_deviation: eps values must be decreasing");
    }
  }
  auto one = [&run](double eps) {
    const PairDiagnostics d = run_pair(run, eps);
    return KimuraRow{eps, d.deviation, d.u_lambda_drift, d.angle_defect, d.center_residual,
                     static_cast<long>(d.samples.size()) - 1};
  };
  std::vector<KimuraRow> rows;
  if (!run.parallel) {
    for (double eps : run.eps) rows.push_back(one(eps));
    return rows;
  }
  std::vector<std::future<KimuraRow>> jobs;
  for (double eps : run.eps) jobs.push_back(std::async(std::launch::async, one, eps));
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

Complex q_robin(const GreenModel& m, const ChartPoint& w) {
  const int chart = w.chart;
  const numerics::ComplexFn h1 = [&m, chart](Complex z) {
    return m.regular_coeffs(ChartPoint{chart, z}).h1;
  };
  const Complex dh1 = numerics::wirtinger_dz(h1, w.z, kDerivativeStep);
  return -6.0 * (dh1 - 2.0 * m.regular_coeffs(w).h2);
}

Covector dipole_field(const Surface& s, const ChartPoint& w, Complex m, const ChartPoint& z) {
  const Complex d = s.relative_coordinate(z, w);
  if (std::abs(d) < 1e-12) throw SingularityError("dipole_field: evaluation at the dipole");
  const Complex c = m / (d * d);
  return Covector{c.imag(), c.real()};
}

}  // namespace surfvortex
