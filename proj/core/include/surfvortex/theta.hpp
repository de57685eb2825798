#pragma once

#include "surfvortex/types.hpp"

namespace surfvortex::theta {

struct Theta1 {
  Complex value;
  Complex derivative;  // d/dz
};

/// Jacobi theta_1(z | tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z),
/// q = exp(i pi tau). The series is cut when terms drop below 1e-17 relative.
/// Intended for z in (or near) the centred fundamental cell.
Theta1 theta1(Complex z, Complex tau);

/// log |eta(tau)|, eta the Dedekind eta function.
double log_abs_eta(Complex tau);

/// Eisenstein series E2(tau) = 1 - 24 sum sigma_1(n) q^(2n).
Complex eisenstein_e2(Complex tau);

}  // namespace surfvortex::theta
