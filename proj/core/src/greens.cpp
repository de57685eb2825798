#include "surfvortex/greens.hpp"

#include <cmath>
#include <vector>

#include "surfvortex/errors.hpp"
#include "surfvortex/theta.hpp"

namespace surfvortex {
namespace {

constexpr double kCoincidence = 1e-12;

double chord_squared(const ChartPoint& z, const ChartPoint& w) {
  const auto x = Sphere::embed(z);
  const auto y = Sphere::embed(w);
  double d2 = 0.0;
  for (int k = 0; k < 3; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
  return d2;
}

// First three Fourier modes of H on a circle of radius rho around w.
std::array<Complex, 3> circle_modes(const GreenModel& m, const ChartPoint& w, double rho,
                                    int samples) {
  std::array<Complex, 3> modes{};
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * kPi * j / samples;
    const Complex e = std::polar(1.0, theta);
    const double h = m.regular_part(ChartPoint{w.chart, w.z + rho * e}, w);
    for (int k = 0; k < 3; ++k) modes[k] += h * std::pow(std::conj(e), k);
  }
  for (auto& c : modes) c /= static_cast<double>(samples);
  return modes;
}

}  // namespace

GreenModel::GreenModel(std::shared_ptr<const Surface> surface) : surface_(std::move(surface)) {
  if (!surface_) throw Error("GreenModel: null surface");
}

RegularExpansion GreenModel::regular_coeffs(const ChartPoint& w) const {
  return extract_regular_coeffs(w);
}

RegularExpansion GreenModel::extract_regular_coeffs(const ChartPoint& w,
                                                    const ExtractionOptions& options) const {
  const double rho = options.radius;
  const auto outer = circle_modes(*this, w, rho, options.samples);
  const auto inner = circle_modes(*this, w, 0.5 * rho, options.samples);
  RegularExpansion out;
  // mode 0 = h0 + h11 rho^2 + O(rho^4)
  const double m_outer = outer[0].real(), m_inner = inner[0].real();
  out.h11 = (m_outer - m_inner) / (0.75 * rho * rho);
  out.h0 = m_inner - out.h11 * 0.25 * rho * rho;
  // mode k = h_k rho^k / 2 + O(rho^(k+2)); Richardson on the two radii
  const Complex h1_outer = 2.0 * outer[1] / rho;
  const Complex h1_inner = 2.0 * inner[1] / (0.5 * rho);
  out.h1 = (4.0 * h1_inner - h1_outer) / 3.0;
  const Complex h2_outer = 2.0 * outer[2] / (rho * rho);
  const Complex h2_inner = 2.0 * inner[2] / (0.25 * rho * rho);
  out.h2 = (4.0 * h2_inner - h2_outer) / 3.0;
  if (!std::isfinite(out.h0) || !std::isfinite(std::abs(out.h1)) ||
      !std::isfinite(std::abs(out.h2)) || !std::isfinite(out.h11)) {
    throw ConvergenceError("extract_regular_coeffs: non-finite coefficients");
  }
  return out;
}

double GreenModel::regular_part(const ChartPoint& z, const ChartPoint& w) const {
  const Complex d = surface_->relative_coordinate(z, w);
  return 2.0 * kPi * green(z, w) + std::log(std::abs(d));
}

double GreenModel::robin(const ChartPoint& w) const {
  return (regular_coeffs(w).h0 + std::log(surface_->density(w))) / (2.0 * kPi);
}

double GreenModel::mean_integral(const ChartPoint& w) const {
  return surface_->integrate([&](const ChartPoint& z) { return green(z, w); }, w);
}

// ---------------------------------------------------------------------------

SphereGreen::SphereGreen(std::shared_ptr<const Sphere> sphere) : GreenModel(std::move(sphere)) {}

double SphereGreen::green(const ChartPoint& z, const ChartPoint& w) const {
  const double d2 = chord_squared(z, w);
  if (d2 < kCoincidence * kCoincidence) throw SingularityError("sphere green: coincident points");
  return -(std::log(0.25 * d2) + 1.0) / (4.0 * kPi);
}

Complex SphereGreen::gradient(const ChartPoint& z, const ChartPoint& w) const {
  if (chord_squared(z, w) < kCoincidence * kCoincidence) {
    throw SingularityError("sphere green gradient: coincident points");
  }
  const Complex zz = z.z;
  Complex pole;
  if (w.chart == z.chart) {
    pole = 1.0 / (zz - w.z);
  } else {
    // w = 1/w' in z's chart; w' = 0 is the point at infinity
    pole = w.z / (zz * w.z - 1.0);
  }
  return -(pole - std::conj(zz) / (1.0 + std::norm(zz))) / (4.0 * kPi);
}

RegularExpansion SphereGreen::regular_coeffs(const ChartPoint& w) const {
  const Complex v = w.z;
  const double s = 1.0 + std::norm(v);
  RegularExpansion out;
  out.h0 = std::log(s) - 0.5;
  out.h1 = std::conj(v) / s;
  out.h2 = -std::conj(v) * std::conj(v) / (2.0 * s * s);
  out.h11 = 1.0 / (2.0 * s * s);
  return out;
}

// ---------------------------------------------------------------------------

TorusGreen::TorusGreen(std::shared_ptr<const FlatTorus> torus) : GreenModel(std::move(torus)) {
  constant_ = theta::log_abs_eta(this->torus().tau()) / (2.0 * kPi);
  coeffs_ = extract_regular_coeffs(ChartPoint{0, 0.0});
  // exact by translation invariance and symmetry
  coeffs_.h1 = 0.0;
}

const FlatTorus& TorusGreen::torus() const { return static_cast<const FlatTorus&>(*surface_); }

Complex TorusGreen::reduced_difference(const ChartPoint& z, const ChartPoint& w) const {
  const Complex d = torus().reduce(z.z - w.z);
  if (std::abs(d) < kCoincidence) throw SingularityError("torus green: coincident points");
  return d;
}

double TorusGreen::green(const ChartPoint& z, const ChartPoint& w) const {
  const Complex d = reduced_difference(z, w);
  const Complex tau = torus().tau();
  const auto th = theta::theta1(d, tau);
  return -(std::log(std::abs(th.value)) - kPi * d.imag() * d.imag() / tau.imag()) / (2.0 * kPi) +
         constant_;
}

Complex TorusGreen::gradient(const ChartPoint& z, const ChartPoint& w) const {
  const Complex d = reduced_difference(z, w);
  const Complex tau = torus().tau();
  const auto th = theta::theta1(d, tau);
  return -(0.5 * th.derivative / th.value + kI * kPi * d.imag() / tau.imag()) / (2.0 * kPi);
}

RegularExpansion TorusGreen::regular_coeffs(const ChartPoint&) const { return coeffs_; }

std::shared_ptr<const GreenModel> make_green_model(std::shared_ptr<const Surface> surface) {
  if (auto s = std::dynamic_pointer_cast<const Sphere>(surface)) {
    return std::make_shared<SphereGreen>(s);
  }
  if (auto t = std::dynamic_pointer_cast<const FlatTorus>(surface)) {
    return std::make_shared<TorusGreen>(t);
  }
  return nullptr;
}

}  // namespace surfvortex
