#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "surfvortex/errors.hpp"
#include "surfvortex/greens.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/connections.hpp"
#include "support/oracles.hpp"

namespace sv = surfvortex;
namespace num = surfvortex::numerics;
using sv::ChartPoint;
using sv::Complex;
using sv::kPi;

namespace {

struct Fixture {
  std::shared_ptr<sv::Sphere> sphere = std::make_shared<sv::Sphere>();
  std::shared_ptr<sv::FlatTorus> square = std::make_shared<sv::FlatTorus>();
  std::shared_ptr<sv::FlatTorus> oblique = std::make_shared<sv::FlatTorus>(Complex(0.3, 1.1));
  sv::SphereGreen gs{sphere};
  sv::TorusGreen gsq{square};
  sv::TorusGreen gob{oblique};
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

ChartPoint torus_point(std::mt19937_64& rng, const sv::FlatTorus& t) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {0, t.from_lattice(u(rng), u(rng))};
}

}  // namespace

TEST(SphereGreen, ClosedFormValue) {
  EXPECT_NEAR(fx().gs.green({0, 0.0}, {0, 1.0}), (std::log(2.0) - 1.0) / (4.0 * kPi), 1e-15);
  EXPECT_THROW(fx().gs.green({0, 0.5}, {0, 0.5}), sv::SingularityError);
}

TEST(SphereGreen, ChartIndependent) {
  const ChartPoint z{0, Complex(0.8, -0.4)}, w{0, Complex(1.3, 0.2)};
  const auto& s = *fx().sphere;
  EXPECT_NEAR(fx().gs.green(z, w), fx().gs.green(s.to_chart(z, 1), s.to_chart(w, 1)), 1e-14);
  EXPECT_NEAR(fx().gs.green(z, w), fx().gs.green(z, s.to_chart(w, 1)), 1e-14);
}

TEST(Green, SymmetryAtRandomPairs) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const ChartPoint a{0, oracle::sphere_chart_point(rng)}, b{0, oracle::sphere_chart_point(rng)};
    EXPECT_LE(std::abs(fx().gs.green(a, b) - fx().gs.green(b, a)), 1e-10);
    const auto p = torus_point(rng, *fx().oblique), q = torus_point(rng, *fx().oblique);
    EXPECT_LE(std::abs(fx().gob.green(p, q) - fx().gob.green(q, p)), 1e-10);
  }
}

TEST(TorusGreen, FourierOracle) {
  const double g = fx().gsq.green({0, Complex(0.5, 0.5)}, {0, 0.0});
  EXPECT_NEAR(g, oracle::torus_green_fourier(Complex(0.5, 0.5), Complex(0.0, 1.0)), 1e-8);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0), t(0.15, 0.85);
  for (const auto* gm : {&fx().gsq, &fx().gob}) {
    const auto& torus = static_cast<const sv::FlatTorus&>(gm->surface());
    for (int i = 0; i < 10; ++i) {
      const Complex d = torus.from_lattice(u(rng), t(rng));
      const Complex w = torus.from_lattice(u(rng), u(rng));
      EXPECT_NEAR(gm->green({0, w + d}, {0, w}), oracle::torus_green_fourier(d, torus.tau()), 1e-8);
    }
  }
}

TEST(Green, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const ChartPoint z{0, oracle::sphere_chart_point(rng)}, w{0, oracle::sphere_chart_point(rng)};
    if (fx().sphere->distance(z, w) < 0.2) continue;
    const num::RealFn f = [&](Complex x) { return fx().gs.green({0, x}, w); };
    EXPECT_LE(std::abs(fx().gs.gradient(z, w) - num::wirtinger_dz(f, z.z, 1e-4)), 1e-7);
    const ChartPoint w1 = fx().sphere->to_chart(w, 1);
    EXPECT_LE(std::abs(fx().gs.gradient(z, w1) - fx().gs.gradient(z, w)), 1e-12);
  }
  for (int i = 0; i < 10; ++i) {
    const auto z = torus_point(rng, *fx().oblique), w = torus_point(rng, *fx().oblique);
    if (fx().oblique->distance(z, w) < 0.2) continue;
    const num::RealFn f = [&](Complex x) { return fx().gob.green({0, x}, w); };
    EXPECT_LE(std::abs(fx().gob.gradient(z, w) - num::wirtinger_dz(f, z.z, 1e-4)), 1e-7);
  }
}

TEST(Green, GradientSpecialValues) {
  const Complex z(2.0);
  EXPECT_LE(std::abs(fx().gs.gradient({0, z}, {0, 0.0}) + (0.5 - 0.4) / (4.0 * kPi)), 1e-15);
  const ChartPoint w{0, Complex(0.4, 0.3)};
  const Complex d(0.21, -0.17);
  EXPECT_LE(std::abs(fx().gob.gradient({0, w.z + d}, w) + fx().gob.gradient({0, w.z - d}, w)), 1e-12);
}

TEST(Green, MeanZero) {
  EXPECT_LE(std::abs(fx().gs.mean_integral({0, Complex(0.3, 0.4)})), 1e-6);
  EXPECT_LE(std::abs(fx().gs.mean_integral({1, Complex(0.1, -0.2)})), 1e-6);
  EXPECT_LE(std::abs(fx().gob.mean_integral({0, Complex(0.7, 0.5)})), 1e-6);
  EXPECT_LE(std::abs(fx().gsq.mean_integral({0, Complex(0.0)})), 1e-6);
}

TEST(Green, LaplacianIdentityOffSingularity) {
  std::mt19937_64 rng(9);
  for (const sv::GreenModel* gm :
       {static_cast<const sv::GreenModel*>(&fx().gs), static_cast<const sv::GreenModel*>(&fx().gob)}) {
    const auto& s = gm->surface();
    int checked = 0;
    while (checked < 10) {
      ChartPoint z, w;
      if (s.genus() == 0) {
        z = {0, oracle::sphere_chart_point(rng)};
        w = {0, oracle::sphere_chart_point(rng)};
      } else {
        z = torus_point(rng, *fx().oblique);
        w = torus_point(rng, *fx().oblique);
      }
      if (s.distance(z, w) < 0.1) continue;
      const num::RealFn f = [&](Complex x) { return gm->green({z.chart, x}, w); };
      const double lam = s.density(z);
      EXPECT_LE(std::abs(num::laplacian(f, z.z, 1e-3) - lam * lam / s.volume()), 1e-5);
      ++checked;
    }
  }
}

TEST(SphereGreen, RegularCoefficients) {
  const auto c0 = fx().gs.regular_coeffs({0, 0.0});
  EXPECT_NEAR(c0.h0, -0.5, 1e-15);
  EXPECT_EQ(c0.h1, Complex(0.0));
  EXPECT_EQ(c0.h2, Complex(0.0));
  EXPECT_NEAR(c0.h11, 0.5, 1e-15);
  EXPECT_LE(std::abs(fx().gs.regular_coeffs({0, 1.0}).h1 - 0.5), 1e-15);
}

TEST(SphereGreen, ExtractionAgreesWithClosedForms) {
  for (Complex w : {Complex(0.0), Complex(0.4, -0.3), Complex(1.2, 0.5)}) {
    const auto exact = fx().gs.regular_coeffs({0, w});
    const auto ext = fx().gs.extract_regular_coeffs({0, w});
    EXPECT_NEAR(ext.h0, exact.h0, 1e-8);
    EXPECT_LE(std::abs(ext.h1 - exact.h1), 1e-6);
    EXPECT_LE(std::abs(ext.h2 - exact.h2), 1e-4);
    EXPECT_NEAR(ext.h11, exact.h11, 1e-4);
  }
}

TEST(Green, H11ProportionalToMetric) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 20; ++i) {
    const ChartPoint w{0, oracle::sphere_chart_point(rng)};
    const double lam = fx().sphere->density(w);
    EXPECT_NEAR(fx().gs.regular_coeffs(w).h11, kPi * lam * lam / (8.0 * kPi), 1e-6);
  }
  for (const auto* gm : {&fx().gsq, &fx().gob}) {
    const double V = gm->surface().volume();
    EXPECT_NEAR(gm->regular_coeffs({0, 0.3}).h11, kPi / (2.0 * V), 1e-4);
    EXPECT_NEAR(gm->extract_regular_coeffs({0, Complex(0.6, 0.2)}).h11, kPi / (2.0 * V), 1e-4);
    EXPECT_EQ(gm->regular_coeffs({0, 0.7}).h1, Complex(0.0));
  }
}

TEST(TorusGreen, ClosedFormCoefficients) {
  for (const auto* gm : {&fx().gsq, &fx().gob}) {
    const auto& torus = static_cast<const sv::FlatTorus&>(gm->surface());
    const Complex tau = torus.tau();
    const double T = tau.imag();
    const Complex eta = oracle::eta_product(tau);
    const double h0 = -std::log(2.0 * kPi * std::pow(std::abs(eta), 3)) + 2.0 * kPi * gm->normalization_constant();
    const Complex h2 = kPi * kPi * oracle::e2_divisor_sum(tau) / 6.0 - kPi / (2.0 * T);
    const auto c = gm->regular_coeffs({0, 0.0});
    EXPECT_NEAR(c.h0, h0, 1e-8);
    EXPECT_LE(std::abs(c.h2 - h2), 1e-4);
    EXPECT_NEAR(gm->normalization_constant(), std::log(std::abs(eta)) / (2.0 * kPi), 1e-13);
  }
}

TEST(Green, RobinFunction) {
  const double expected = (std::log(2.0) - 0.5) / (2.0 * kPi);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const ChartPoint w{0, oracle::sphere_chart_point(rng)};
    EXPECT_NEAR(fx().gs.robin(w), expected, 1e-13);
    EXPECT_NEAR(fx().gs.robin(fx().sphere->to_chart(w, 1)), expected, 1e-13);
  }
  EXPECT_NEAR(fx().gob.robin({0, 0.1}), fx().gob.robin({0, Complex(0.8, 0.9)}), 1e-12);
}

TEST(Green, H1IsDerivativeOfH0) {
  for (Complex w : {Complex(0.3, 0.1), Complex(-0.9, 0.6)}) {
    const num::RealFn h0 = [](Complex x) { return fx().gs.regular_coeffs({0, x}).h0; };
    EXPECT_LE(std::abs(num::wirtinger_dz(h0, w, 1e-3) - fx().gs.regular_coeffs({0, w}).h1), 1e-6);
    // through the numerical extraction as well
    const num::RealFn e0 = [](Complex x) { return fx().gs.extract_regular_coeffs({0, x}).h0; };
    EXPECT_LE(std::abs(num::wirtinger_dz(e0, w, 1e-2) - fx().gs.regular_coeffs({0, w}).h1), 1e-5);
  }
}

namespace {

// d_z d_w H and d_z d_wbar H at the diagonal, averaged over z = w +- delta.
std::pair<Complex, Complex> mixed_second_derivatives(const sv::GreenModel& g, ChartPoint w) {
  const double h = 1e-4, delta = 2e-3;
  Complex dzdw = 0.0, dzdwb = 0.0;
  for (double sign : {1.0, -1.0}) {
    const Complex z = w.z + sign * delta * Complex(0.6, 0.8);
    const num::ComplexFn dz = [&](Complex wv) {
      const num::RealFn hz = [&](Complex x) { return g.regular_part({w.chart, x}, {w.chart, wv}); };
      return num::wirtinger_dz(hz, z, h);
    };
    dzdw += 0.5 * num::wirtinger_dz(dz, w.z, h);
    dzdwb += 0.5 * num::wirtinger_dzbar(dz, w.z, h);
  }
  return {dzdw, dzdwb};
}

}  // namespace

TEST(Green, SecondDerivativeIdentities) {
  {
    const ChartPoint w{0, Complex(0.4, -0.2)};
    const auto [a, b] = mixed_second_derivatives(fx().gs, w);
    const auto c = fx().gs.regular_coeffs(w);
    const num::ComplexFn h1 = [](Complex x) { return fx().gs.regular_coeffs({0, x}).h1; };
    EXPECT_LE(std::abs(a - (0.5 * num::wirtinger_dz(h1, w.z, 1e-4) - c.h2)), 1e-4);
    EXPECT_LE(std::abs(b - (0.5 * num::wirtinger_dzbar(h1, w.z, 1e-4) - c.h11)), 1e-4);
  }
  {
    const ChartPoint w{0, Complex(0.5, 0.4)};
    const auto [a, b] = mixed_second_derivatives(fx().gob, w);
    const auto c = fx().gob.regular_coeffs(w);
    EXPECT_LE(std::abs(a + c.h2), 1e-4);
    EXPECT_LE(std::abs(b + c.h11), 1e-4);
  }
}

TEST(SphereGreen, CoefficientsTransformUnderChartSwap) {
  const auto swap = fx().sphere->transition(0, 1);
  const auto conv = sv::DefectConvention::Coefficient;
  for (Complex w : {Complex(0.5), Complex(0.7, -0.6), Complex(1.4, 0.3)}) {
    const Complex wt = swap(w);
    const auto c = fx().gs.regular_coeffs({0, w});
    const auto ct = fx().gs.regular_coeffs({1, wt});
    EXPECT_NEAR(sv::transform_connection(0, c.h0, swap, w, conv).real(), ct.h0, 1e-12);
    EXPECT_LE(std::abs(sv::transform_connection(1, c.h1, swap, w, conv) - ct.h1), 1e-12);
    const num::ComplexFn h1 = [](Complex x) { return fx().gs.regular_coeffs({0, x}).h1; };
    const num::ComplexFn h1t = [](Complex x) { return fx().gs.regular_coeffs({1, x}).h1; };
    const Complex k = 0.5 * (num::wirtinger_dz(h1, w, 1e-4) - 2.0 * c.h2);
    const Complex kt = 0.5 * (num::wirtinger_dz(h1t, wt, 1e-4) - 2.0 * ct.h2);
    EXPECT_LE(std::abs(sv::transform_connection(2, k, swap, w, conv) - kt), 1e-8);
    EXPECT_NEAR(ct.h11 * std::norm(swap.derivative(w)), c.h11, 1e-12);
    // extraction in the swapped chart follows the same rule
    const auto et = fx().gs.extract_regular_coeffs({1, wt});
    EXPECT_NEAR(et.h0, ct.h0, 1e-8);
    EXPECT_LE(std::abs(et.h1 - ct.h1), 1e-6);
  }
}

TEST(Green, MakeGreenModel) {
  EXPECT_NE(sv::make_green_model(fx().sphere), nullptr);
  EXPECT_NE(sv::make_green_model(fx().oblique), nullptr);
  EXPECT_EQ(sv::make_green_model(std::make_shared<sv::DiskDouble>()), nullptr);
}
