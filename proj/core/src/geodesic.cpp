#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {
namespace {

struct Deriv {
  Complex dz;
  Complex dv;
};

Deriv geodesic_rhs(const Surface& s, int chart, Complex z, Complex v) {
  const Complex r = s.affine(ChartPoint{chart, z});
  return {v, -r * v * v};
}

GeodesicPath integrate_fixed(const Surface& s, const GeodesicState& g0, double T, double dt) {
  const long steps = std::max(1L, std::lround(T / dt));
  const double h = T / static_cast<double>(steps);
  GeodesicPath path;
  path.dt = h;
  path.t.reserve(steps + 1);
  path.states.reserve(steps + 1);
  path.speed.reserve(steps + 1);

  ChartChange start = s.recenter(g0.point);
  GeodesicState g{start.point, g0.velocity * start.jacobian};
  auto record = [&](double t) {
    path.t.push_back(t);
    path.states.push_back(g);
    path.speed.push_back(s.density(g.point) * std::abs(g.velocity));
  };
  record(0.0);
  for (long n = 1; n <= steps; ++n) {
    const int c = g.point.chart;
    const Complex z = g.point.z, v = g.velocity;
    const Deriv k1 = geodesic_rhs(s, c, z, v);
    const Deriv k2 = geodesic_rhs(s, c, z + 0.5 * h * k1.dz, v + 0.5 * h * k1.dv);
    const Deriv k3 = geodesic_rhs(s, c, z + 0.5 * h * k2.dz, v + 0.5 * h * k2.dv);
    const Deriv k4 = geodesic_rhs(s, c, z + h * k3.dz, v + h * k3.dv);
    const Complex z1 = z + h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
    const Complex v1 = v + h / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    if (!std::isfinite(std::abs(z1)) || !std::isfinite(std::abs(v1))) {
      throw StepFailure("geodesic_integrate: non-finite state at step " + std::to_string(n));
    }
    const ChartChange moved = s.recenter(ChartPoint{c, z1});
    g = GeodesicState{moved.point, v1 * moved.jacobian};
    record(n * h);
  }
  return path;
}

}  // namespace

std::vector<ChartPoint> GeodesicPath::points() const {
  std::vector<ChartPoint> out;
  out.reserve(states.size());
  for (const auto& g : states) out.push_back(g.point);
  return out;
}

GeodesicPath geodesic_integrate(const Surface& s, const GeodesicState& g0, double T, double dt,
                                const GeodesicOptions& options) {
  if (!(dt > 0.0) || !(T > 0.0)) throw Error("geodesic_integrate: dt and T must be positive");
  if (std::abs(g0.velocity) == 0.0) throw Error("geodesic_integrate: zero initial velocity");
  GeodesicPath path = integrate_fixed(s, g0, T, dt);
  if (!options.residual_tolerance) return path;
  for (int k = 0; k < options.max_halvings; ++k) {
    if (path.states.size() < 5 ||
        geodesic_residual(s, path.points(), path.dt) <= *options.residual_tolerance) {
      return path;
    }
    dt *= 0.5;
    path = integrate_fixed(s, g0, T, dt);
  }
  return path;
}

double geodesic_residual(const Surface& s, const std::vector<ChartPoint>& path, double dt) {
  const std::size_t n = path.size();
  if (n < 5) throw Error("geodesic_residual: need at least 5 samples");
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const ChartPoint& base = path[i];
    // neighbours in the chart of sample i, relative to it
    Complex d[5];
    for (int j = -2; j <= 2; ++j) d[j + 2] = s.relative_coordinate(path[i + j], base);
    const Complex vm = (d[2] - d[0]) / (2.0 * dt);
    const Complex v0 = (d[3] - d[1]) / (2.0 * dt);
    const Complex vp = (d[4] - d[2]) / (2.0 * dt);
    if (std::abs(vm) == 0.0 || std::abs(v0) == 0.0 || std::abs(vp) == 0.0) {
      throw Error("geodesic_residual: vanishing discrete velocity");
    }
    const double turn = numerics::wrap_angle(std::arg(vp) - std::arg(vm)) / (2.0 * dt);
    const double r = turn + (s.affine(base) * v0).imag();
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace surfvortex
