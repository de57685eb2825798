#pragma once

#include "surfvortex/connections.hpp"
#include "surfvortex/types.hpp"

namespace surfvortex::schottky {

/// Schwarz function of the unit circle, S(z) = 1/z (S(z) = conj(z) on |z| = 1).
HolomorphicMap schwarz_function();

/// Anti-conformal reflection z -> conj(S(z)) = 1/conj(z). Throws at z = 0.
Complex reflect(Complex z);

/// Density of the doubled metric in the extended coordinate:
/// 1 on |z| <= 1, |S'(z)| = |z|^-2 outside.
double double_metric(Complex z);

/// Points closer than this to |z| = 1 count as boundary points.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Affine connection of the doubled metric: 0 inside, {S(z), z}_1 outside,
/// and the mean value of the two one-sided limits on |z| = 1.
Complex double_connection(Complex z);

/// Unit tangent of the positively oriented boundary, T(z) = i z, and T'(z).
Complex boundary_tangent(Complex z);
Complex boundary_tangent_derivative(Complex z);

enum class BoundaryConnection {
  MeanValue,  // the boundary value of double_connection
  Inside,     // one-sided limit from the front (0)
};

enum class TangentMode {
  Analytic,          // z' = T(z)
  FiniteDifference,  // centered differences of the samples
};

/// max over n equally spaced arc-length samples of |d/dt arg z' + Im(r(z) z')|
/// along |z| = 1, d/dt arg z' by centered differences.
double boundary_geodesic_residual(int n_samples,
                                  BoundaryConnection connection = BoundaryConnection::MeanValue,
                                  TangentMode tangent = TangentMode::Analytic);

/// Green function of the double: the disk Green function extended oddly
/// under reflection, (1/2 pi)(log|1 - z conj(w)| - log|z - w|).
double double_green(Complex z, Complex w);

/// Density of the singular curvature carried by the boundary, 2 kappa with
/// kappa = 1 for the unit circle. Diagnostic only.
double boundary_curvature_density();

}  // namespace surfvortex::schottky
