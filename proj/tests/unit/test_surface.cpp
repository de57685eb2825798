#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surfvortex/errors.hpp"
#include "surfvortex/surface.hpp"
#include "support/oracles.hpp"

namespace sv = surfvortex;
using sv::ChartPoint;
using sv::Complex;
using sv::kPi;

TEST(Sphere, Density) {
  const sv::Sphere s;
  EXPECT_DOUBLE_EQ(s.density({0, Complex(0.0)}), 2.0);
  EXPECT_DOUBLE_EQ(s.density({0, Complex(1.0)}), 1.0);
  EXPECT_DOUBLE_EQ(s.density({1, Complex(0.0)}), 2.0);
}

TEST(Sphere, VolumeByQuadrature) {
  const sv::Sphere s;
  EXPECT_NEAR(s.volume_by_quadrature(), 4.0 * kPi, 1e-8);
  EXPECT_NEAR(s.integrate([&](const ChartPoint& p) { return sv::Sphere::embed(p)[2]; }), 0.0, 1e-10);
  const double z2 = s.integrate([&](const ChartPoint& p) {
    const auto x = sv::Sphere::embed(p);
    return x[2] * x[2];
  });
  EXPECT_NEAR(z2, 4.0 * kPi / 3.0, 1e-9);
}

TEST(Sphere, MetricConsistentAcrossCharts) {
  const sv::Sphere s;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.5, 2.0), a(0.0, 2.0 * kPi);
  const auto t = s.transition(0, 1);
  for (int i = 0; i < 100; ++i) {
    const Complex z = std::polar(u(rng), a(rng));
    const ChartPoint p{0, z};
    const ChartPoint q = s.to_chart(p, 1);
    EXPECT_LE(std::abs(q.z - t(z)), 1e-14);
    EXPECT_NEAR(s.density(q) * std::abs(t.derivative(z)), s.density(p), 1e-12);
  }
}

TEST(Sphere, ChartsAndCurvature) {
  const sv::Sphere s;
  const ChartPoint far{0, Complex(3.0, 1.0)};
  EXPECT_EQ(s.recenter(far).point.chart, 1);
  EXPECT_NEAR(s.distance(far, s.recenter(far).point), 0.0, 1e-12);
  EXPECT_NEAR(s.curvature({0, Complex(0.3, 0.4)}), 1.0, 1e-6);
  const ChartPoint p{0, Complex(0.9, 0.8)};
  EXPECT_NEAR(s.distance(p, s.to_chart(p, 1)), 0.0, 1e-15);
  EXPECT_THROW(s.to_chart(ChartPoint{0, Complex(0.0)}, 1), sv::DomainError);
  EXPECT_NEAR(s.distance(ChartPoint{0, Complex(0.0)}, ChartPoint{0, Complex(1.0)}), kPi / 2.0, 1e-14);
}

TEST(Torus, DensityVolumeAndReduction) {
  const sv::FlatTorus sq;
  EXPECT_EQ(sq.density({0, Complex(0.3, 0.8)}), 1.0);
  EXPECT_EQ(sq.volume(), 1.0);
  EXPECT_NEAR(sq.volume_by_quadrature(), 1.0, 1e-12);
  const sv::FlatTorus rect(Complex(0.0, 2.0));
  EXPECT_EQ(rect.volume(), 2.0);
  const sv::FlatTorus ob(Complex(0.3, 1.1));
  const Complex d = ob.reduce(Complex(2.4, 3.0));
  const auto lc = ob.lattice_coords(d);
  EXPECT_LE(std::abs(lc[0]), 0.5 + 1e-12);
  EXPECT_LE(std::abs(lc[1]), 0.5 + 1e-12);
  const auto w = ob.canonical({0, Complex(-0.2, 1.5)});
  const auto wl = ob.lattice_coords(w.z);
  EXPECT_GE(wl[0], 0.0);
  EXPECT_LT(wl[0], 1.0);
  EXPECT_GE(wl[1], 0.0);
  EXPECT_LT(wl[1], 1.0);
}

TEST(Torus, Integrate) {
  const sv::FlatTorus ob(Complex(0.3, 1.1));
  const double v = ob.integrate([](const ChartPoint& p) { return std::cos(2.0 * kPi * p.z.real()); });
  EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Geodesic, FlatTorusStraightLine) {
  const sv::FlatTorus sq;
  const auto path = sv::geodesic_integrate(sq, {{0, Complex(0.2, 0.3)}, Complex(0.3, 0.7)}, 2.0, 1e-2);
  const ChartPoint expect = sq.canonical({0, Complex(0.2, 0.3) + 2.0 * Complex(0.3, 0.7)});
  EXPECT_LE(sq.distance(path.states.back().point, expect), 1e-12);
  EXPECT_LE(sv::geodesic_residual(sq, path.points(), path.dt), 1e-10);
}

TEST(Geodesic, SphereEquatorClosure) {
  const sv::Sphere s;
  const double T = 2.0 * kPi;
  const auto path = sv::geodesic_integrate(s, {{0, Complex(1.0)}, Complex(0.0, 1.0)}, T, 1e-3);
  EXPECT_LE(s.distance(path.states.back().point, {0, Complex(1.0)}), 1e-6);
  for (const auto& st : path.states) {
    const auto x = sv::Sphere::embed(st.point);
    EXPECT_LE(std::abs(x[2]), 1e-9);
  }
  double drift = 0.0;
  for (double sp : path.speed) drift = std::max(drift, std::abs(sp - 1.0));
  EXPECT_LE(drift, 1e-8);
  EXPECT_LE(sv::geodesic_residual(s, path.points(), path.dt), 1e-6);
}

TEST(Geodesic, SpeedConservedFromAnyStart) {
  const sv::Sphere s;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    const Complex z = oracle::sphere_chart_point(rng);
    const auto path = sv::geodesic_integrate(s, {{0, z}, Complex(0.4, -0.9)}, 3.0, 1e-3);
    const double s0 = path.speed.front();
    for (double sp : path.speed) EXPECT_LE(std::abs(sp - s0) / s0, 1e-8);
  }
}

TEST(Geodesic, ResidualConvergesQuadratically) {
  const sv::Sphere s;
  const sv::GeodesicState g0{{0, Complex(0.3, -0.2)}, Complex(0.5, 0.5)};
  double prev = 0.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const auto path = sv::geodesic_integrate(s, g0, 2.0, dt);
    const double r = sv::geodesic_residual(s, path.points(), path.dt);
    if (prev > 0.0) EXPECT_GT(std::log2(prev / r), 1.8);
    prev = r;
  }
}

TEST(Geodesic, ReversibleOnSphere) {
  const sv::Sphere s;
  const sv::GeodesicState g0{{0, Complex(0.3, -0.2)}, Complex(0.5, 0.5)};
  const auto fwd = sv::geodesic_integrate(s, g0, 3.0, 1e-3);
  const auto& end = fwd.states.back();
  const auto back = sv::geodesic_integrate(s, {end.point, -end.velocity}, 3.0, 1e-3);
  EXPECT_LE(s.distance(back.states.back().point, g0.point), 1e-7);
}

TEST(Geodesic, LatitudeCircleIsNotGeodesic) {
  const sv::Sphere s;
  std::vector<ChartPoint> circle;
  const double dt = 1e-3;
  for (int j = 0; j < 200; ++j) circle.push_back({0, std::polar(0.5, j * dt)});
  EXPECT_GT(sv::geodesic_residual(s, circle, dt), 0.1);
}

TEST(Geodesic, ExpMapAgreesWithIntegrator) {
  const sv::Sphere s;
  const ChartPoint p{0, Complex(0.1, 0.7)};
  const Complex v(0.6, -0.3);
  const auto path = sv::geodesic_integrate(s, {p, v}, 1.0, 1e-3);
  EXPECT_LE(s.distance(path.states.back().point, s.exp_map(p, v)), 1e-10);
}

TEST(DiskDouble, MetricAndConnection) {
  const sv::DiskDouble d;
  EXPECT_EQ(d.density({0, Complex(0.5)}), 1.0);
  EXPECT_NEAR(d.density({0, Complex(2.0)}), 0.25, 1e-15);
  EXPECT_EQ(d.affine({0, Complex(0.5)}), Complex(0.0));
  EXPECT_LE(std::abs(d.affine({0, Complex(2.0)}) + 1.0), 1e-15);
  EXPECT_NEAR(d.volume_by_quadrature(), 2.0 * kPi, 1e-8);
}

TEST(DiskDouble, BoundaryIsGeodesicForBilliard) {
  const sv::DiskDouble d;
  // A chord through the front sheet crosses to the back and returns.
  const ChartPoint p{0, Complex(0.0)};
  const ChartPoint q = d.exp_map(p, Complex(2.0));
  EXPECT_NEAR(d.distance(p, q), 2.0, 1e-9);
}
