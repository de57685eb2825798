#include <cmath>
#include <limits>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {
namespace {

constexpr int kDuffyNodes = 40;

}  // namespace

FlatTorus::FlatTorus(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("torus: modulus must have positive imaginary part");
}

double FlatTorus::density(const ChartPoint& p) const {
  require_chart(p);
  return 1.0;
}

Complex FlatTorus::affine(const ChartPoint& p) const {
  require_chart(p);
  return 0.0;
}

std::array<double, 2> FlatTorus::lattice_coords(Complex z) const {
  const double t = z.imag() / tau_.imag();
  return {z.real() - t * tau_.real(), t};
}

Complex FlatTorus::reduce(Complex d) const {
  auto [s, t] = lattice_coords(d);
  const Complex centered = from_lattice(s - std::round(s), t - std::round(t));
  // the centered cell representative is not always the shortest for
  // oblique lattices, so look at the neighbours too
  Complex best = centered;
  double best_abs = std::abs(centered);
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      const Complex c = centered + static_cast<double>(m) + static_cast<double>(n) * tau_;
      const double a = std::abs(c);
      if (a < best_abs - 1e-15) {
        best = c;
        best_abs = a;
      }
    }
  }
  return best;
}

double FlatTorus::integrate(const ScalarField& f, std::optional<ChartPoint> singular) const {
  // Cell centred at the singular point split into four triangles with apex
  // there, each mapped from the unit square (Duffy) with u = t^2 grading.
  const Complex w = singular ? singular->z : Complex(0.0);
  const auto rule = numerics::gauss_legendre(kDuffyNodes);
  const std::array<std::array<double, 2>, 4> corners{
      {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const auto& c1 = corners[e];
    const auto& c2 = corners[(e + 1) % 4];
    const double e_s = c2[0] - c1[0], e_t = c2[1] - c1[1];
    const double det = std::abs(c1[0] * e_t - c1[1] * e_s);
    for (int i = 0; i < kDuffyNodes; ++i) {
      const double a = rule.nodes[i];
      const double u = a * a;
      const double wu = rule.weights[i] * 2.0 * a * u * det;
      for (int j = 0; j < kDuffyNodes; ++j) {
        const double v = rule.nodes[j];
        const double s = u * (c1[0] + v * e_s);
        const double t = u * (c1[1] + v * e_t);
        total += wu * rule.weights[j] * f(ChartPoint{0, w + from_lattice(s, t)});
      }
    }
  }
  return total * tau_.imag();
}

ChartPoint FlatTorus::to_chart(const ChartPoint& p, int chart) const {
  require_chart(p);
  if (chart != 0) throw DomainError("torus: no chart with id " + std::to_string(chart));
  return p;
}

HolomorphicMap FlatTorus::transition(int, int) const { return HolomorphicMap::identity(); }

bool FlatTorus::in_atlas(const ChartPoint& p) const {
  return p.chart == 0 && std::isfinite(std::abs(p.z));
}

ChartChange FlatTorus::recenter(const ChartPoint& p) const {
  require_chart(p);
  auto [s, t] = lattice_coords(p.z);
  s -= std::floor(s);
  t -= std::floor(t);
  // floor can leave exactly 1.0 after rounding
  if (s >= 1.0) s -= 1.0;
  if (t >= 1.0) t -= 1.0;
  return ChartChange{ChartPoint{0, from_lattice(s, t)}, 1.0};
}

Complex FlatTorus::relative_coordinate(const ChartPoint& q, const ChartPoint& base) const {
  require_chart(q);
  require_chart(base);
  return reduce(q.z - base.z);
}

double FlatTorus::distance(const ChartPoint& a, const ChartPoint& b) const {
  return std::abs(relative_coordinate(a, b));
}

ChartPoint FlatTorus::exp_map(const ChartPoint& p, Complex v) const {
  return canonical(ChartPoint{0, p.z + v});
}

ChartPoint FlatTorus::midpoint(const ChartPoint& a, const ChartPoint& b) const {
  return canonical(ChartPoint{0, a.z + 0.5 * relative_coordinate(b, a)});
}

}  // namespace surfvortex
