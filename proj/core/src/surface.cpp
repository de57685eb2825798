#include "surfvortex/surface.hpp"

#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"

namespace surfvortex {

Complex Surface::affine(const ChartPoint& p) const {
  const int chart = p.chart;
  const numerics::RealFn log_lambda = [this, chart](Complex z) {
    return std::log(density(ChartPoint{chart, z}));
  };
  return 2.0 * numerics::wirtinger_dz(log_lambda, p.z, 1e-4 * std::max(1.0, std::abs(p.z)));
}

MetricField Surface::metric_field(int chart) const {
  return MetricField{[this, chart](Complex z) { return density(ChartPoint{chart, z}); },
                     [this, chart](Complex z) { return affine(ChartPoint{chart, z}); }};
}

Complex Surface::relative_coordinate(const ChartPoint& q, const ChartPoint& base) const {
  return to_chart(q, base.chart).z - base.z;
}

double Surface::curvature(const ChartPoint& p) const {
  return gaussian_curvature(metric_field(p.chart), p.z);
}

void Surface::require_chart(const ChartPoint& p) const {
  if (p.chart < 0 || p.chart >= chart_count()) {
    throw DomainError(name() + ": no chart with id " + std::to_string(p.chart));
  }
  if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
    throw DomainError(name() + ": non-finite coordinate");
  }
}

}  // namespace surfvortex
