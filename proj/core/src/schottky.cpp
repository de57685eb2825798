#include "surfvortex/schottky.hpp"

#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"

namespace surfvortex::schottky {

HolomorphicMap schwarz_function() { return HolomorphicMap::inversion(); }

Complex reflect(Complex z) {
  if (z == Complex(0.0)) throw DomainError("reflect: z = 0 has no mirror point");
  return 1.0 / std::conj(z);
}

double double_metric(Complex z) {
  const double r = std::abs(z);
  return r <= 1.0 ? 1.0 : 1.0 / (r * r);
}

Complex double_connection(Complex z) {
  if (z == Complex(0.0)) return 0.0;
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= kBoundaryTolerance) {
    return 0.5 * bracket(1, schwarz_function(), z);
  }
  if (r < 1.0) return 0.0;
  return bracket(1, schwarz_function(), z);
}

Complex boundary_tangent(Complex z) { return kI * z; }

Complex boundary_tangent_derivative(Complex) { return kI; }

double boundary_geodesic_residual(int n, BoundaryConnection connection, TangentMode tangent) {
  if (n < 16) throw Error("boundary_geodesic_residual: need at least 16 samples");
  const double h = 2.0 * kPi / n;
  auto point = [n](int j) {
    j = ((j % n) + n) % n;
    return std::polar(1.0, 2.0 * kPi * j / n);
  };
  auto velocity = [&](int j) {
    if (tangent == TangentMode::Analytic) return boundary_tangent(point(j));
    return (point(j + 1) - point(j - 1)) / (2.0 * h);
  };
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex z = point(j);
    const Complex r = connection == BoundaryConnection::MeanValue ? double_connection(z) : 0.0;
    const double turn =
        numerics::wrap_angle(std::arg(velocity(j + 1)) - std::arg(velocity(j - 1))) / (2.0 * h);
    worst = std::max(worst, std::abs(turn + (r * velocity(j)).imag()));
  }
  return worst;
}

double double_green(Complex z, Complex w) {
  const double near = std::abs(z - w);
  const double far = std::abs(1.0 - z * std::conj(w));
  if (near < 1e-12 || far < 1e-12) {
    throw SingularityError("double_green: z coincides with w or its reflection");
  }
  return (std::log(far) - std::log(near)) / (2.0 * kPi);
}

double boundary_curvature_density() { return 2.0; }

}  // namespace surfvortex::schottky
