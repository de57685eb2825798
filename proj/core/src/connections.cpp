#include "surfvortex/connections.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"

namespace surfvortex {
namespace {

constexpr double kConformalThreshold = 1e-12;
constexpr double kMetricStep = 1e-4;

double checked_density(const MetricField& metric, Complex z) {
  const double lam = metric.density(z);
  if (!(lam > 0.0) || !std::isfinite(lam)) {
    throw InvalidMetricError("metric density must be positive, got " + std::to_string(lam));
  }
  return lam;
}

}  // namespace

HolomorphicMap::HolomorphicMap(Fn f, std::optional<Fn> d1, std::optional<Fn> d2,
                               std::optional<Fn> d3)
    : f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)), d3_(std::move(d3)) {}

HolomorphicMap HolomorphicMap::identity() {
  return HolomorphicMap([](Complex z) { return z; }, [](Complex) { return Complex(1.0); },
                        [](Complex) { return Complex(0.0); },
                        [](Complex) { return Complex(0.0); });
}

HolomorphicMap HolomorphicMap::mobius(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) < kConformalThreshold) {
    throw SingularMapError("mobius: ad - bc vanishes");
  }
  return HolomorphicMap(
      [=](Complex z) { return (a * z + b) / (c * z + d); },
      [=](Complex z) { return det / ((c * z + d) * (c * z + d)); },
      [=](Complex z) { return -2.0 * c * det / std::pow(c * z + d, 3); },
      [=](Complex z) { return 6.0 * c * c * det / std::pow(c * z + d, 4); });
}

HolomorphicMap HolomorphicMap::inversion() {
  return mobius(0.0, 1.0, 1.0, 0.0);
}

Complex HolomorphicMap::derivative(Complex z, int order) const {
  const std::optional<Fn>* analytic = nullptr;
  switch (order) {
    case 1: analytic = &d1_; break;
    case 2: analytic = &d2_; break;
    case 3: analytic = &d3_; break;
    default:
      throw Error("HolomorphicMap::derivative: order " + std::to_string(order) +
                  " not supported");
  }
  if (analytic->has_value()) return (**analytic)(z);
  return numerics::holomorphic_derivative(f_, z, order);
}

HolomorphicMap HolomorphicMap::then(const HolomorphicMap& psi) const {
  const HolomorphicMap phi = *this;
  if (!phi.has_analytic_derivatives() || !psi.has_analytic_derivatives()) {
    return HolomorphicMap([phi, psi](Complex z) { return psi(phi(z)); });
  }
  // Faa di Bruno up to third order.
  return HolomorphicMap(
      [phi, psi](Complex z) { return psi(phi(z)); },
      [phi, psi](Complex z) { return psi.derivative(phi(z), 1) * phi.derivative(z, 1); },
      [phi, psi](Complex z) {
        const Complex u = phi(z), p1 = phi.derivative(z, 1);
        return psi.derivative(u, 2) * p1 * p1 + psi.derivative(u, 1) * phi.derivative(z, 2);
      },
      [phi, psi](Complex z) {
        const Complex u = phi(z), p1 = phi.derivative(z, 1), p2 = phi.derivative(z, 2);
        return psi.derivative(u, 3) * p1 * p1 * p1 + 3.0 * psi.derivative(u, 2) * p1 * p2 +
               psi.derivative(u, 1) * phi.derivative(z, 3);
      });
}

Complex bracket(int k, const HolomorphicMap& phi, Complex z) {
  const Complex d1 = phi.derivative(z, 1);
  if (std::abs(d1) < kConformalThreshold) {
    throw SingularMapError("bracket: map is not conformal at the given point");
  }
  switch (k) {
    case 0:
      return std::log(d1);
    case 1:
      return phi.derivative(z, 2) / d1;
    case 2: {
      const Complex ratio = phi.derivative(z, 2) / d1;
      return phi.derivative(z, 3) / d1 - 1.5 * ratio * ratio;
    }
    default:
      throw Error("bracket: index must be 0, 1 or 2, got " + std::to_string(k));
  }
}

Complex affine_from_metric(const MetricField& metric, Complex z) {
  checked_density(metric, z);
  if (metric.affine) return metric.affine(z);
  const numerics::RealFn log_lambda = [&metric](Complex u) {
    return std::log(checked_density(metric, u));
  };
  return 2.0 * numerics::wirtinger_dz(log_lambda, z, kMetricStep * std::max(1.0, std::abs(z)));
}

double gaussian_curvature(const MetricField& metric, Complex z) {
  const double lam = checked_density(metric, z);
  const numerics::RealFn log_lambda = [&metric](Complex u) {
    return std::log(checked_density(metric, u));
  };
  // 4 d_z d_zbar = Laplacian; a coarser step keeps round-off of the
  // second difference small.
  const double h = 1e-3 * std::max(1.0, std::abs(z));
  return -numerics::laplacian(log_lambda, z, h) / (lam * lam);
}

Complex AffineConnection::derivative(Complex z) const {
  if (dr) return dr(z);
  // r need not be holomorphic, so take the Wirtinger derivative.
  return numerics::wirtinger_dz(r, z, 1e-4 * std::max(1.0, std::abs(z)));
}

AffineConnection metric_connection(const MetricField& metric) {
  return AffineConnection{[metric](Complex z) { return affine_from_metric(metric, z); }, {}};
}

Complex projective_from_affine(const AffineConnection& r, Complex z) {
  const Complex rz = r(z);
  return r.derivative(z) - 0.5 * rz * rz;
}

Complex projective_polarized(const AffineConnection& r, Complex z, Complex w) {
  return 0.5 * (r.derivative(z) + r.derivative(w) - r(z) * r(w));
}

Complex transform_connection(int kind, Complex value, const HolomorphicMap& phi, Complex w,
                             DefectConvention convention) {
  const Complex defect = bracket(kind, phi, w);
  const Complex d1 = phi.derivative(w, 1);
  const bool coefficient = convention == DefectConvention::Coefficient;
  switch (kind) {
    case 0:
      return coefficient ? value + defect.real() : value - defect.real();
    case 1:
      return coefficient ? (value + 0.5 * defect) / d1 : (value - defect) / d1;
    case 2:
      return coefficient ? (value + defect / 12.0) / (d1 * d1) : (value - defect) / (d1 * d1);
    default:
      throw Error("transform_connection: kind must be 0, 1 or 2");
  }
}

}  // namespace surfvortex
