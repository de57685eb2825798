#include <array>
#include <cmath>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {
namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Chart 1 is chart 0 followed by diag(1, -1, -1).
Vec3 flip(const Vec3& x, int chart) { return chart == 0 ? x : Vec3{x[0], -x[1], -x[2]}; }

// d X / dx and d X / dy of the chart-0 embedding.
std::array<Vec3, 2> embedding_frame(const ChartPoint& p) {
  const double x = p.z.real(), y = p.z.imag();
  const double s = 1.0 + x * x + y * y;
  const double s2 = s * s;
  const Vec3 dx{(2.0 * s - 4.0 * x * x) / s2, -4.0 * x * y / s2, 4.0 * x / s2};
  const Vec3 dy{-4.0 * x * y / s2, (2.0 * s - 4.0 * y * y) / s2, 4.0 * y / s2};
  return {flip(dx, p.chart), flip(dy, p.chart)};
}

constexpr int kRadialNodes = 48;
constexpr int kAngularNodes = 96;

}  // namespace

double Sphere::density(const ChartPoint& p) const {
  require_chart(p);
  return 2.0 / (1.0 + std::norm(p.z));
}

Complex Sphere::affine(const ChartPoint& p) const {
  require_chart(p);
  return -2.0 * std::conj(p.z) / (1.0 + std::norm(p.z));
}

double Sphere::integrate(const ScalarField& f, std::optional<ChartPoint> singular) const {
  // Rotate the singular point (or 0) to the origin of a unit disk in its
  // chart; the complementary disk is the other chart around the antipode.
  const ChartPoint center = singular ? *singular : ChartPoint{0, 0.0};
  require_chart(center);
  const int c = center.chart;
  const Complex w = center.z;
  const auto rule = numerics::gauss_legendre(kRadialNodes);
  double total = 0.0;
  for (int disk = 0; disk < 2; ++disk) {
    double disk_sum = 0.0;
    for (int i = 0; i < kRadialNodes; ++i) {
      // r = t^2 clusters nodes near the center
      const double t = rule.nodes[i];
      const double r = t * t;
      const double jac = rule.weights[i] * 2.0 * t * r;
      double ring = 0.0;
      for (int j = 0; j < kAngularNodes; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / kAngularNodes;
        const Complex zeta = std::polar(r, theta);
        const ChartPoint q =
            disk == 0 ? ChartPoint{c, (zeta + w) / (1.0 - std::conj(w) * zeta)}
                      : ChartPoint{1 - c, (zeta - std::conj(w)) / (1.0 + w * zeta)};
        const double lam = 2.0 / (1.0 + r * r);
        ring += f(q) * lam * lam;
      }
      disk_sum += jac * ring * (2.0 * kPi / kAngularNodes);
    }
    total += disk_sum;
  }
  return total;
}

ChartPoint Sphere::to_chart(const ChartPoint& p, int chart) const {
  require_chart(p);
  if (chart < 0 || chart > 1) throw DomainError("sphere: no chart with id " + std::to_string(chart));
  if (chart == p.chart) return p;
  if (std::abs(p.z) < 1e-300) throw DomainError("sphere: pole is not covered by the other chart");
  return ChartPoint{chart, 1.0 / p.z};
}

HolomorphicMap Sphere::transition(int from, int to) const {
  if (from == to) return HolomorphicMap::identity();
  return HolomorphicMap::inversion();
}

bool Sphere::in_atlas(const ChartPoint& p) const {
  return (p.chart == 0 || p.chart == 1) && std::isfinite(std::abs(p.z));
}

ChartChange Sphere::recenter(const ChartPoint& p) const {
  require_chart(p);
  if (std::abs(p.z) <= kSwitchRadius) return ChartChange{p, 1.0};
  return ChartChange{ChartPoint{1 - p.chart, 1.0 / p.z}, -1.0 / (p.z * p.z)};
}

std::array<double, 3> Sphere::embed(const ChartPoint& p) {
  const double x = p.z.real(), y = p.z.imag();
  const double r2 = x * x + y * y;
  const Vec3 x0{2.0 * x / (1.0 + r2), 2.0 * y / (1.0 + r2), (r2 - 1.0) / (1.0 + r2)};
  return flip(x0, p.chart);
}

ChartPoint Sphere::unembed(const std::array<double, 3>& x) {
  if (x[2] <= 0.6) return ChartPoint{0, Complex(x[0], x[1]) / (1.0 - x[2])};
  return ChartPoint{1, Complex(x[0], -x[1]) / (1.0 + x[2])};
}

double Sphere::distance(const ChartPoint& a, const ChartPoint& b) const {
  require_chart(a);
  require_chart(b);
  const Vec3 xa = embed(a), xb = embed(b);
  const Vec3 d{xa[0] - xb[0], xa[1] - xb[1], xa[2] - xb[2]};
  const double chord = std::min(2.0, norm(d));
  return 2.0 * std::asin(0.5 * chord);
}

ChartPoint Sphere::exp_map(const ChartPoint& p, Complex v) const {
  require_chart(p);
  const double speed = density(p) * std::abs(v);
  if (speed == 0.0) return p;
  const auto frame = embedding_frame(p);
  Vec3 tangent{};
  for (int k = 0; k < 3; ++k) tangent[k] = v.real() * frame[0][k] + v.imag() * frame[1][k];
  const double tn = norm(tangent);
  const Vec3 x = embed(p);
  Vec3 y{};
  for (int k = 0; k < 3; ++k) {
    y[k] = std::cos(speed) * x[k] + std::sin(speed) * tangent[k] / tn;
  }
  const double yn = norm(y);
  for (double& c : y) c /= yn;
  return unembed(y);
}

ChartPoint Sphere::midpoint(const ChartPoint& a, const ChartPoint& b) const {
  const Vec3 xa = embed(a), xb = embed(b);
  Vec3 m{xa[0] + xb[0], xa[1] + xb[1], xa[2] + xb[2]};
  const double mn = norm(m);
  if (mn < 1e-12) throw DomainError("sphere: midpoint of antipodal points is not unique");
  for (double& c : m) c /= mn;
  return unembed(m);
}

}  // namespace surfvortex
