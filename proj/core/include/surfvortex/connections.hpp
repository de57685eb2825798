#pragma once

#include <functional>
#include <optional>

#include "surfvortex/types.hpp"

namespace surfvortex {

/// Holomorphic local coordinate change z -> phi(z). Derivatives default to
/// finite differences of the evaluator when not supplied.
class HolomorphicMap {
 public:
  using Fn = std::function<Complex(Complex)>;

  explicit HolomorphicMap(Fn f, std::optional<Fn> d1 = std::nullopt,
                          std::optional<Fn> d2 = std::nullopt,
                          std::optional<Fn> d3 = std::nullopt);

  static HolomorphicMap identity();
  /// (a z + b) / (c z + d) with analytic derivatives; throws if ad - bc = 0.
  static HolomorphicMap mobius(Complex a, Complex b, Complex c, Complex d);
  /// z -> 1/z, the sphere chart transition.
  static HolomorphicMap inversion();

  Complex operator()(Complex z) const { return f_(z); }
  Complex derivative(Complex z, int order = 1) const;
  bool has_analytic_derivatives() const { return d1_.has_value(); }

  /// psi o this.
  HolomorphicMap then(const HolomorphicMap& psi) const;

 private:
  Fn f_;
  std::optional<Fn> d1_, d2_, d3_;
};

/// {phi(z), z}_k for k = 0, 1, 2:
///   k=0: log phi'        (principal branch)
///   k=1: phi''/phi'
///   k=2: phi'''/phi' - 3/2 (phi''/phi')^2   (Schwarzian)
Complex bracket(int k, const HolomorphicMap& phi, Complex z);

/// Positive conformal density lambda in one chart, with an optional analytic
/// r = 2 d/dz log lambda.
struct MetricField {
  std::function<double(Complex)> density;
  std::function<Complex(Complex)> affine;  // may be empty
};

Complex affine_from_metric(const MetricField& metric, Complex z);
double gaussian_curvature(const MetricField& metric, Complex z);

/// Chart field z -> r(z) with optional analytic dr/dz.
struct AffineConnection {
  std::function<Complex(Complex)> r;
  std::function<Complex(Complex)> dr;  // may be empty

  Complex operator()(Complex z) const { return r(z); }
  Complex derivative(Complex z) const;
};

AffineConnection metric_connection(const MetricField& metric);

Complex projective_from_affine(const AffineConnection& r, Complex z);
Complex projective_polarized(const AffineConnection& r, Complex z, Complex w);

/// Which defect rule transform_connection applies.
///   Coefficient: expansion coefficients c0, c1, c2 of a regular part
///                (c~0 = c0 + Re{}_0, c~1 = (c1 + {}_1/2)/phi', c~2 = (c2 + {}_2/12)/phi'^2).
///   Connection:  p = log lambda, r, q themselves
///                (p~ = p - Re{}_0, r~ = (r - {}_1)/phi', q~ = (q - {}_2)/phi'^2).
enum class DefectConvention { Coefficient, Connection };

/// Value of a k-connection in the chart w~ = phi(w), given its value at w.
/// For k = 0 only the real part of the result is meaningful.
Complex transform_connection(int kind, Complex value, const HolomorphicMap& phi, Complex w,
                             DefectConvention convention = DefectConvention::Coefficient);

}  // namespace surfvortex
