#include <gtest/gtest.h>

#include <memory>
#include <random>

#include <Eigen/Eigenvalues>

#include "surfvortex/errors.hpp"
#include "surfvortex/homology.hpp"

namespace sv = surfvortex;
using sv::ChartPoint;
using sv::Complex;
using sv::kPi;

namespace {

std::shared_ptr<sv::FlatTorus> torus(Complex tau) { return std::make_shared<sv::FlatTorus>(tau); }

const Complex kTaus[] = {Complex(0.0, 1.0), Complex(0.0, 2.0), Complex(0.3, 1.1), Complex(-0.45, 0.8)};

}  // namespace

TEST(Homology, SphereHasEmptyBasis) {
  const auto b = sv::harmonic_basis(std::make_shared<sv::Sphere>());
  EXPECT_EQ(b.genus(), 0);
}

TEST(Homology, NormalizationByQuadrature) {
  for (Complex tau : kTaus) {
    const auto b = sv::harmonic_basis(torus(tau));
    ASSERT_EQ(b.genus(), 1);
    const auto pl = b.default_placement();
    const auto alpha = b.alpha_cycle(0, pl), beta = b.beta_cycle(0, pl);
    auto da = [&](const ChartPoint& p) { return b.d_alpha(0, p); };
    auto db = [&](const ChartPoint& p) { return b.d_beta(0, p); };
    auto minus_db = [&](const ChartPoint& p) { return -1.0 * b.d_beta(0, p); };
    EXPECT_NEAR(sv::contour_integral(alpha, minus_db), 1.0, 1e-10);
    EXPECT_NEAR(sv::contour_integral(beta, da), 1.0, 1e-10);
    EXPECT_NEAR(sv::contour_integral(alpha, da), 0.0, 1e-10);
    EXPECT_NEAR(sv::contour_integral(beta, db), 0.0, 1e-10);
  }
}

TEST(Homology, SquareTorusPeriodMatrix) {
  const auto pm = sv::period_matrix(sv::harmonic_basis(torus(Complex(0.0, 1.0))));
  EXPECT_NEAR(pm.P(0, 0), 1.0, 1e-8);
  EXPECT_NEAR(pm.Q(0, 0), 1.0, 1e-8);
  EXPECT_NEAR(pm.R(0, 0), 0.0, 1e-8);
}

TEST(Homology, RectangularTorusPeriodMatrix) {
  const auto pm = sv::period_matrix(sv::harmonic_basis(torus(Complex(0.0, 2.0))));
  EXPECT_GT(pm.P(0, 0), 0.0);
  EXPECT_GT(pm.Q(0, 0), 0.0);
  EXPECT_NE(pm.P(0, 0), pm.Q(0, 0));
  EXPECT_NEAR(pm.R(0, 0), 0.0, 1e-10);
  EXPECT_NEAR(pm.P(0, 0), 2.0, 1e-10);
  EXPECT_NEAR(pm.Q(0, 0), 0.5, 1e-10);
  // Gram matrix of a normalized basis of a flat torus: determinant 1.
  EXPECT_NEAR(pm.assembled().determinant(), 1.0, 1e-10);
}

TEST(Homology, PeriodMatrixSymmetricPositiveDefinite) {
  for (Complex tau : kTaus) {
    const auto pm = sv::period_matrix(sv::harmonic_basis(torus(tau)));
    const Eigen::MatrixXd M = pm.assembled();
    EXPECT_LE((M - M.transpose()).cwiseAbs().maxCoeff(), 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Homology, PeriodMatrixAsEnergyIntegrals) {
  for (Complex tau : kTaus) {
    const auto t = torus(tau);
    const auto b = sv::harmonic_basis(t);
    const auto pm = sv::period_matrix(b);
    auto dot = [](const sv::Covector& x, const sv::Covector& y) { return x.dx * y.dx + x.dy * y.dy; };
    const double P = t->integrate([&](const ChartPoint& p) { return dot(b.d_beta(0, p), b.d_beta(0, p)); });
    const double Q = t->integrate([&](const ChartPoint& p) { return dot(b.d_alpha(0, p), b.d_alpha(0, p)); });
    const double R = -t->integrate([&](const ChartPoint& p) { return dot(b.d_alpha(0, p), b.d_beta(0, p)); });
    EXPECT_NEAR(pm.P(0, 0), P, 1e-10);
    EXPECT_NEAR(pm.Q(0, 0), Q, 1e-10);
    EXPECT_NEAR(pm.R(0, 0), R, 1e-10);
    EXPECT_NEAR(pm.P(0, 0), std::norm(tau) / tau.imag(), 1e-10);
    EXPECT_NEAR(pm.Q(0, 0), 1.0 / tau.imag(), 1e-10);
    EXPECT_NEAR(pm.R(0, 0), -tau.real() / tau.imag(), 1e-10);
  }
}

TEST(Homology, StarredBasis) {
  for (Complex tau : kTaus) {
    const auto b = sv::harmonic_basis(torus(tau));
    const auto pm = sv::period_matrix(b);
    const ChartPoint p{0, Complex(0.3, 0.4)};
    const auto st = sv::star_basis_transform(b, pm, p);
    const auto direct_a = b.d_alpha(0, p).star(), direct_b = b.d_beta(0, p).star();
    EXPECT_NEAR(st.star_alpha[0].dx, direct_a.dx, 1e-10);
    EXPECT_NEAR(st.star_alpha[0].dy, direct_a.dy, 1e-10);
    EXPECT_NEAR(st.star_beta[0].dx, direct_b.dx, 1e-10);
    EXPECT_NEAR(st.star_beta[0].dy, direct_b.dy, 1e-10);
    const auto twice = b.d_alpha(0, p).star().star();
    EXPECT_NEAR(twice.dx, -b.d_alpha(0, p).dx, 0.0);
    EXPECT_NEAR(twice.dy, -b.d_alpha(0, p).dy, 0.0);
  }
}

TEST(Homology, StarRelationPeriods) {
  for (Complex tau : kTaus) {
    const auto b = sv::harmonic_basis(torus(tau));
    const auto pm = sv::period_matrix(b);
    const auto pl = b.default_placement();
    const double R = pm.R(0, 0), P = pm.P(0, 0), Q = pm.Q(0, 0);
    auto star_a = [&](const ChartPoint& p) { return b.d_alpha(0, p).star(); };
    auto star_b = [&](const ChartPoint& p) { return b.d_beta(0, p).star(); };
    auto comb_a = [&](const ChartPoint& p) { return R * b.d_alpha(0, p) + Q * b.d_beta(0, p); };
    auto comb_b = [&](const ChartPoint& p) { return -P * b.d_alpha(0, p) - R * b.d_beta(0, p); };
    for (const auto& cyc : {b.alpha_cycle(0, pl), b.beta_cycle(0, pl)}) {
      EXPECT_NEAR(sv::contour_integral(cyc, star_a), sv::contour_integral(cyc, comb_a), 1e-8);
      EXPECT_NEAR(sv::contour_integral(cyc, star_b), sv::contour_integral(cyc, comb_b), 1e-8);
    }
  }
}

TEST(ConjugatePeriods, CancellingPairVanishes) {
  const auto t = torus(Complex(0.0, 1.0));
  const sv::TorusGreen g(t);
  const auto b = sv::harmonic_basis(t);
  const ChartPoint w{0, Complex(0.4, 0.6)};
  const auto cp = sv::conjugate_green_periods(g, b, {{w, 1.3}, {w, -1.3}}, b.default_placement());
  EXPECT_NEAR(cp.alpha(0), 0.0, 1e-12);
  EXPECT_NEAR(cp.beta(0), 0.0, 1e-12);
}

TEST(ConjugatePeriods, PairPeriodsArePathIntegrals) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 0.95), gam(-2.0, 2.0);
  for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.1)}) {
    const auto t = torus(tau);
    const sv::TorusGreen g(t);
    const auto b = sv::harmonic_basis(t);
    const auto pl = b.default_placement();
    {
      const double G = 1.0;
      const ChartPoint w1{0, t->from_lattice(0.5, 0.3)}, w2{0, t->from_lattice(0.5, 0.7)};
      const auto cp = sv::conjugate_green_periods(g, b, {{w1, G}, {w2, -G}}, pl);
      EXPECT_NEAR(cp.alpha(0), G * b.d_alpha(0, w1).apply(w1.z - w2.z), 1e-6);
    }
    for (int i = 0; i < 20; ++i) {
      const double G = gam(rng);
      const ChartPoint w1{0, t->from_lattice(u(rng), u(rng))}, w2{0, t->from_lattice(u(rng), u(rng))};
      const auto cp = sv::conjugate_green_periods(g, b, {{w1, G}, {w2, -G}}, pl);
      // the straight segment in lattice coordinates stays off the cycles
      EXPECT_NEAR(cp.alpha(0), G * b.d_alpha(0, w1).apply(w1.z - w2.z), 1e-6);
      EXPECT_NEAR(cp.beta(0), G * b.d_beta(0, w1).apply(w1.z - w2.z), 1e-6);
    }
  }
}

TEST(ConjugatePeriods, ClosedFormMatchesQuadrature) {
  const auto t = torus(Complex(0.3, 1.1));
  const sv::TorusGreen g(t);
  const auto b = sv::harmonic_basis(t);
  const sv::CyclePlacement pl{{0.35}, {0.6}};
  const std::vector<sv::PointVortex> vs{{{0, t->from_lattice(0.2, 0.7)}, 0.8},
                                        {{0, t->from_lattice(0.9, 0.1)}, -0.3}};
  const auto q = sv::conjugate_green_periods(g, b, vs, pl, sv::PeriodEvaluation::Quadrature);
  const auto c = sv::conjugate_green_periods(g, b, vs, pl, sv::PeriodEvaluation::ClosedForm);
  EXPECT_NEAR(q.alpha(0), c.alpha(0), 1e-9);
  EXPECT_NEAR(q.beta(0), c.beta(0), 1e-9);
}

TEST(ConjugatePeriods, UnitJumpAcrossCycle) {
  const auto t = torus(Complex(0.0, 1.0));
  const sv::TorusGreen g(t);
  const auto b = sv::harmonic_basis(t);
  const sv::CyclePlacement pl{{0.5}, {0.5}};
  const double G = 1.7;
  auto alpha_at = [&](double tt) {
    return sv::conjugate_green_periods(g, b, {{{0, t->from_lattice(0.2, tt)}, G}}, pl).alpha(0);
  };
  const double below = alpha_at(0.49), above = alpha_at(0.51);
  // continuous part G * 0.02 plus a jump of magnitude G
  EXPECT_NEAR(std::abs(above - below - 0.02 * G), G, 1e-6);
  auto beta_at = [&](double ss) {
    return sv::conjugate_green_periods(g, b, {{{0, t->from_lattice(ss, 0.2)}, G}}, pl).beta(0);
  };
  EXPECT_NEAR(std::abs(beta_at(0.51) - beta_at(0.49) + 0.02 * G), G, 1e-6);
}

TEST(ConjugatePeriods, VortexOnCycleThrows) {
  const auto t = torus(Complex(0.0, 1.0));
  const sv::TorusGreen g(t);
  const auto b = sv::harmonic_basis(t);
  const sv::CyclePlacement pl{{0.5}, {0.5}};
  EXPECT_THROW(sv::conjugate_green_periods(g, b, {{{0, Complex(0.2, 0.5)}, 1.0}}, pl),
               sv::VortexOnCycleError);
}

TEST(Cycles, PlacementKeepsClearance) {
  const auto t = torus(Complex(0.3, 1.1));
  const auto b = sv::harmonic_basis(t);
  const std::vector<ChartPoint> pts{{0, t->from_lattice(0.01, 0.02)}, {0, t->from_lattice(0.5, 0.45)}};
  EXPECT_LT(b.clearance(b.default_placement(), pts), 0.05);
  const auto pl = b.place_cycles(pts);
  EXPECT_GT(b.clearance(pl, pts), 0.2);
}
