#pragma once

#include <memory>

#include "surfvortex/surface.hpp"
#include "surfvortex/types.hpp"

namespace surfvortex {

/// Coefficients of the regular part around w,
///   H(z, w) = h0 + Re(h1 d) + Re(h2 d^2) + h11 |d|^2 + O(|d|^3),  d = z - w.
struct RegularExpansion {
  double h0 = 0.0;
  Complex h1{};
  Complex h2{};
  double h11 = 0.0;
};

struct ExtractionOptions {
  double radius = 1e-2;
  int samples = 64;
};

/// Mean-zero Green function of the Laplace-Beltrami operator on a closed
/// surface: 4 d_z d_zbar G(., w) = lambda^2 / V away from w, log pole -1/(2 pi) log|z - w|.
class GreenModel {
 public:
  explicit GreenModel(std::shared_ptr<const Surface> surface);
  virtual ~GreenModel() = default;

  const Surface& surface() const { return *surface_; }
  std::shared_ptr<const Surface> surface_ptr() const { return surface_; }

  virtual double green(const ChartPoint& z, const ChartPoint& w) const = 0;
  /// dG/dz at z, in z's chart.
  virtual Complex gradient(const ChartPoint& z, const ChartPoint& w) const = 0;
  /// Closed forms where registered; numerical extraction otherwise.
  virtual RegularExpansion regular_coeffs(const ChartPoint& w) const;

  /// Numerical extraction of the coefficients from samples of H on two
  /// circles around w (radii rho and rho/2), Fourier modes 0, 1, 2.
  RegularExpansion extract_regular_coeffs(const ChartPoint& w,
                                          const ExtractionOptions& options = {}) const;

  /// H(z, w) = 2 pi G(z, w) + log|z - w|, with z - w taken in w's chart.
  double regular_part(const ChartPoint& z, const ChartPoint& w) const;

  /// (h0(w) + log lambda(w)) / (2 pi).
  double robin(const ChartPoint& w) const;

  /// G(., w) is mean zero against the area form; returns the integral.
  double mean_integral(const ChartPoint& w) const;

 protected:
  std::shared_ptr<const Surface> surface_;
};

/// Closed-form Green function of the unit sphere,
/// G = -(1/4 pi)(log(|X - Y|^2 / 4) + 1) with X, Y the embedded points.
class SphereGreen final : public GreenModel {
 public:
  explicit SphereGreen(std::shared_ptr<const Sphere> sphere);

  double green(const ChartPoint& z, const ChartPoint& w) const override;
  Complex gradient(const ChartPoint& z, const ChartPoint& w) const override;
  RegularExpansion regular_coeffs(const ChartPoint& w) const override;
};

/// Flat torus Green function
///   G = -(1/2 pi)[log|theta_1(z - w; tau)| - pi (Im(z - w))^2 / Im tau] + C,
/// C = log|eta(tau)| / (2 pi) for the mean-zero normalization.
class TorusGreen final : public GreenModel {
 public:
  explicit TorusGreen(std::shared_ptr<const FlatTorus> torus);

  double green(const ChartPoint& z, const ChartPoint& w) const override;
  Complex gradient(const ChartPoint& z, const ChartPoint& w) const override;
  /// Translation invariant: extracted once at construction.
  RegularExpansion regular_coeffs(const ChartPoint& w) const override;

  double normalization_constant() const { return constant_; }

 private:
  const FlatTorus& torus() const;
  Complex reduced_difference(const ChartPoint& z, const ChartPoint& w) const;

  double constant_ = 0.0;
  RegularExpansion coeffs_;
};

/// Green model of the built-in surface, or nullptr if none is registered.
std::shared_ptr<const GreenModel> make_green_model(std::shared_ptr<const Surface> surface);

}  // namespace surfvortex
