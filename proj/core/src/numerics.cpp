#include "surfvortex/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"

namespace surfvortex::numerics {
namespace {

Complex stencil(const ComplexFn& f, Complex z, int order, double h) {
  switch (order) {
    case 1:
      return (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
    case 2:
      return (-f(z + 2.0 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h) -
              f(z - 2.0 * h)) /
             (12.0 * h * h);
    case 3:
      return (-f(z + 3.0 * h) + 8.0 * f(z + 2.0 * h) - 13.0 * f(z + h) + 13.0 * f(z - h) -
              8.0 * f(z - 2.0 * h) + f(z - 3.0 * h)) /
             (8.0 * h * h * h);
    default:
      throw Error("holomorphic_derivative: order must be 1, 2 or 3, got " +
                  std::to_string(order));
  }
}

}  // namespace

Complex holomorphic_derivative(const ComplexFn& f, Complex z, int order) {
  // Larger steps for higher orders keep round-off below ~1e-9.
  static constexpr double kBaseStep[] = {0.0, 1e-5, 1e-3, 1e-2};
  if (order < 1 || order > 3) {
    throw Error("holomorphic_derivative: order must be 1, 2 or 3");
  }
  const double h = kBaseStep[order] * std::max(1.0, std::abs(z));
  const Complex coarse = stencil(f, z, order, h);
  const Complex fine = stencil(f, z, order, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

Complex wirtinger_dz(const ComplexFn& f, Complex z, double h) {
  const Complex hx(h, 0.0), hy(0.0, h);
  const Complex fx = (-f(z + 2.0 * hx) + 8.0 * f(z + hx) - 8.0 * f(z - hx) + f(z - 2.0 * hx)) /
                     (12.0 * h);
  const Complex fy = (-f(z + 2.0 * hy) + 8.0 * f(z + hy) - 8.0 * f(z - hy) + f(z - 2.0 * hy)) /
                     (12.0 * h);
  return 0.5 * (fx - kI * fy);
}

Complex wirtinger_dzbar(const ComplexFn& f, Complex z, double h) {
  const Complex hx(h, 0.0), hy(0.0, h);
  const Complex fx = (-f(z + 2.0 * hx) + 8.0 * f(z + hx) - 8.0 * f(z - hx) + f(z - 2.0 * hx)) /
                     (12.0 * h);
  const Complex fy = (-f(z + 2.0 * hy) + 8.0 * f(z + hy) - 8.0 * f(z - hy) + f(z - 2.0 * hy)) /
                     (12.0 * h);
  return 0.5 * (fx + kI * fy);
}

Complex wirtinger_dz(const RealFn& f, Complex z, double h) {
  return wirtinger_dz(ComplexFn([&f](Complex u) { return Complex(f(u), 0.0); }), z, h);
}

double laplacian(const RealFn& f, Complex z, double h) {
  const Complex hx(h, 0.0), hy(0.0, h);
  const double c = f(z);
  auto second = [&](Complex d) {
    return (-f(z + 2.0 * d) + 16.0 * f(z + d) - 30.0 * c + 16.0 * f(z - d) - f(z - 2.0 * d)) /
           (12.0 * h * h);
  };
  return second(hx) + second(hy);
}

QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

double periodic_trapezoid(const std::function<double(double)>& f, int initial_nodes,
                          double tolerance, int max_nodes) {
  int n = initial_nodes;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += f(static_cast<double>(j) / n);
  double estimate = sum / n;
  while (2 * n <= max_nodes) {
    // reuse the previous nodes, evaluate only the midpoints
    for (int j = 0; j < n; ++j) sum += f((j + 0.5) / n);
    n *= 2;
    const double refined = sum / n;
    if (std::abs(refined - estimate) < tolerance) return refined;
    estimate = refined;
  }
  throw ConvergenceError("periodic_trapezoid: no convergence with " + std::to_string(n) +
                         " nodes");
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace surfvortex::numerics
