#include <cmath>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {
namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr int kRadialNodes = 48;
constexpr int kAngularNodes = 96;

}  // namespace

// Both charts carry the same formula: the gluing z -> 1/z is an isometry
// exchanging the two sides.
double DiskDouble::density(const ChartPoint& p) const {
  require_chart(p);
  const double r = std::abs(p.z);
  if (r <= 1.0) return 1.0;
  return 1.0 / (r * r);
}

Complex DiskDouble::affine(const ChartPoint& p) const {
  require_chart(p);
  const double r = std::abs(p.z);
  if (std::abs(r - 1.0) <= kBoundaryTol) return -1.0 / p.z;
  if (r < 1.0) return 0.0;
  return -2.0 / p.z;
}

double DiskDouble::integrate(const ScalarField& f, std::optional<ChartPoint>) const {
  // Front and back are unit disks in charts 0 and 1 with density 1.
  const auto rule = numerics::gauss_legendre(kRadialNodes);
  double total = 0.0;
  for (int chart = 0; chart < 2; ++chart) {
    for (int i = 0; i < kRadialNodes; ++i) {
      const double r = rule.nodes[i];
      double ring = 0.0;
      for (int j = 0; j < kAngularNodes; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / kAngularNodes;
        ring += f(ChartPoint{chart, std::polar(r, theta)});
      }
      total += rule.weights[i] * r * ring * (2.0 * kPi / kAngularNodes);
    }
  }
  return total;
}

ChartPoint DiskDouble::to_chart(const ChartPoint& p, int chart) const {
  require_chart(p);
  if (chart < 0 || chart > 1) {
    throw DomainError("disk-double: no chart with id " + std::to_string(chart));
  }
  if (chart == p.chart) return p;
  if (std::abs(p.z) < 1e-300) throw DomainError("disk-double: point not covered by chart");
  return ChartPoint{chart, 1.0 / p.z};
}

HolomorphicMap DiskDouble::transition(int from, int to) const {
  if (from == to) return HolomorphicMap::identity();
  return HolomorphicMap::inversion();
}

bool DiskDouble::in_atlas(const ChartPoint& p) const {
  return (p.chart == 0 || p.chart == 1) && std::isfinite(std::abs(p.z));
}

ChartChange DiskDouble::recenter(const ChartPoint& p) const {
  require_chart(p);
  if (std::abs(p.z) <= 2.0) return ChartChange{p, 1.0};
  return ChartChange{ChartPoint{1 - p.chart, 1.0 / p.z}, -1.0 / (p.z * p.z)};
}

double DiskDouble::distance(const ChartPoint& a, const ChartPoint& b) const {
  // Same sheet: straight segment. Otherwise the shortest path crosses the
  // boundary once; minimise over the crossing point.
  const Folded fa = fold(a, 0.0), fb = fold(b, 0.0);
  if (fa.front == fb.front) return std::abs(fa.u - fb.u);
  double best = 1e300;
  constexpr int kSamples = 720;
  for (int j = 0; j < kSamples; ++j) {
    const Complex e = std::polar(1.0, 2.0 * kPi * j / kSamples);
    best = std::min(best, std::abs(fa.u - e) + std::abs(fb.u - e));
  }
  return best;
}

ChartPoint DiskDouble::exp_map(const ChartPoint& p, Complex v) const {
  // Folded picture: a billiard in the unit disk that changes sheet at every
  // bounce.
  Folded f = fold(p, v);
  double remaining = 1.0;
  for (int bounce = 0; bounce < 1000 && remaining > 0.0; ++bounce) {
    const double a = std::norm(f.du);
    if (a == 0.0) break;
    const double b = 2.0 * (std::conj(f.u) * f.du).real();
    const double c = std::norm(f.u) - 1.0;
    const double hit = (-b + std::sqrt(std::max(0.0, b * b - 4.0 * a * c))) / (2.0 * a);
    if (hit >= remaining || hit <= 1e-15) {
      if (hit <= 1e-15 && b > 0.0) {
        // sitting on the boundary and heading out: switch sheet first
        f.du -= 2.0 * (std::conj(f.u) * f.du).real() * f.u / std::norm(f.u);
        f.front = !f.front;
        continue;
      }
      f.u += remaining * f.du;
      remaining = 0.0;
      break;
    }
    f.u += hit * f.du;
    remaining -= hit;
    f.du -= 2.0 * (std::conj(f.u) * f.du).real() * f.u / std::norm(f.u);
    f.front = !f.front;
  }
  return unfold(f);
}

ChartPoint DiskDouble::midpoint(const ChartPoint& a, const ChartPoint& b) const {
  const Folded fa = fold(a, 0.0), fb = fold(b, 0.0);
  if (fa.front != fb.front) {
    throw DomainError("disk-double: midpoint across the boundary is not supported");
  }
  return unfold(Folded{0.5 * (fa.u + fb.u), 0.0, fa.front});
}

DiskDouble::Folded DiskDouble::fold(const ChartPoint& p, Complex v) const {
  require_chart(p);
  const Complex z = p.z;
  if (p.chart == 0) {
    if (std::abs(z) <= 1.0) return Folded{z, v, true};
    return Folded{1.0 / std::conj(z), std::conj(-v / (z * z)), false};
  }
  if (std::abs(z) < 1.0) return Folded{std::conj(z), std::conj(v), false};
  return Folded{1.0 / z, -v / (z * z), true};
}

ChartPoint DiskDouble::unfold(const Folded& f) const {
  if (f.front) return canonical(ChartPoint{0, f.u});
  return canonical(ChartPoint{1, std::conj(f.u)});
}

}  // namespace surfvortex
