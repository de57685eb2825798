#include "surfvortex/theta.hpp"

#include <cmath>

#include "surfvortex/errors.hpp"

namespace surfvortex::theta {

Theta1 theta1(Complex z, Complex tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("theta1: Im tau must be positive");
  Theta1 out{0.0, 0.0};
  const Complex log_q = kI * kPi * tau;
  for (int n = 0; n < 200; ++n) {
    const double k = n + 0.5;
    const Complex qn = std::exp(log_q * (k * k));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double m = 2.0 * n + 1.0;
    const Complex s = std::sin(m * kPi * z);
    const Complex c = std::cos(m * kPi * z);
    const Complex term = sign * qn * s;
    out.value += 2.0 * term;
    out.derivative += 2.0 * sign * qn * m * kPi * c;
    if (n > 0 && std::abs(qn) * std::max(std::abs(s), std::abs(c)) * m <
                     1e-17 * std::max(std::abs(out.value), std::abs(out.derivative))) {
      break;
    }
  }
  return out;
}

double log_abs_eta(Complex tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("eta: Im tau must be positive");
  double sum = -kPi * tau.imag() / 12.0;
  for (int n = 1; n < 1000; ++n) {
    const Complex qn = std::exp(2.0 * kPi * kI * tau * static_cast<double>(n));
    sum += std::log(std::abs(1.0 - qn));
    if (std::abs(qn) < 1e-18) break;
  }
  return sum;
}

Complex eisenstein_e2(Complex tau) {
  Complex sum = 0.0;
  for (int n = 1; n < 1000; ++n) {
    const Complex qn = std::exp(2.0 * kPi * kI * tau * static_cast<double>(n));
    if (std::abs(qn) * n * n < 1e-18) break;
    double sigma = 0.0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) sigma += d;
    }
    sum += sigma * qn;
  }
  return 1.0 - 24.0 * sum;
}

}  // namespace surfvortex::theta
