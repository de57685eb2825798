#pragma once

#include <complex>
#include <numbers>

namespace surfvortex {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// A point on a surface: the chart it is expressed in and its complex
/// coordinate in that chart.
struct ChartPoint {
  int chart = 0;
  Complex z{};
};

/// Real one-form at a point, nu = dx_coeff dx + dy_coeff dy.
struct Covector {
  double dx = 0.0;
  double dy = 0.0;

  /// Coefficient of dz in nu = nu_z dz + nu_zbar dzbar.
  Complex dz() const { return 0.5 * Complex(dx, -dy); }
  /// Coefficient of dzbar.
  Complex dzbar() const { return 0.5 * Complex(dx, dy); }

  /// Hodge star for a conformal metric: *dx = dy, *dy = -dx.
  Covector star() const { return {-dy, dx}; }

  /// Pairing with a tangent vector given as a complex chart velocity.
  double apply(Complex v) const { return dx * v.real() + dy * v.imag(); }

  Covector operator+(const Covector& o) const { return {dx + o.dx, dy + o.dy}; }
  Covector operator-(const Covector& o) const { return {dx - o.dx, dy - o.dy}; }
  Covector operator*(double s) const { return {s * dx, s * dy}; }
};

inline Covector operator*(double s, const Covector& c) { return c * s; }

/// Real one-form whose dz coefficient is f, i.e. 2 Re(f dz).
inline Covector real_form_from_dz(Complex f) { return {2.0 * f.real(), -2.0 * f.imag()}; }

}  // namespace surfvortex
