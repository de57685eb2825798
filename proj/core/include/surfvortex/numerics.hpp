#pragma once

#include <functional>
#include <vector>

#include "surfvortex/types.hpp"

namespace surfvortex::numerics {

using ComplexFn = std::function<Complex(Complex)>;
using RealFn = std::function<double(Complex)>;

/// n-th complex derivative (n = 1, 2, 3) of a holomorphic function by
/// 4th-order central differences along the real axis plus one Richardson
/// extrapolation. Steps scale with max(1, |z|).
Complex holomorphic_derivative(const ComplexFn& f, Complex z, int order);

/// Wirtinger derivative d/dz = (d/dx - i d/dy)/2 of a (not necessarily
/// holomorphic) complex field, 4th-order central differences with step h.
Complex wirtinger_dz(const ComplexFn& f, Complex z, double h);
Complex wirtinger_dzbar(const ComplexFn& f, Complex z, double h);

/// Same for a real field.
Complex wirtinger_dz(const RealFn& f, Complex z, double h);

/// Euclidean Laplacian in chart coordinates, 4th-order cross stencil.
double laplacian(const RealFn& f, Complex z, double h);

/// Gauss-Legendre rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

/// Trapezoid rule for a 1-periodic integrand on [0, 1), doubling the
/// number of nodes from `initial_nodes` until two successive estimates
/// differ by less than `tolerance`. Returns the finer estimate; throws
/// ConvergenceError past `max_nodes`.
double periodic_trapezoid(const std::function<double(double)>& f, int initial_nodes,
                          double tolerance, int max_nodes);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace surfvortex::numerics
