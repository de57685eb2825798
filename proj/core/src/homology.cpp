#include "surfvortex/homology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfvortex/errors.hpp"
#include "surfvortex/numerics.hpp"

namespace surfvortex {
namespace {

constexpr int kInitialNodes = 512;
constexpr double kQuadratureTol = 1e-9;
constexpr int kMaxNodes = 1 << 22;

double wrapped_gap(double x) { return std::abs(x - std::round(x)); }

// Middle of the widest gap among points on the unit circle R/Z.
double mid_widest_gap(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  for (double& x : xs) x -= std::floor(x);
  std::sort(xs.begin(), xs.end());
  double best_gap = -1.0, best_mid = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = xs[i];
    const double hi = (i + 1 < xs.size()) ? xs[i + 1] : xs[0] + 1.0;
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      best_mid = 0.5 * (lo + hi);
    }
  }
  return best_mid - std::floor(best_mid);
}

}  // namespace

HarmonicBasis::HarmonicBasis(std::shared_ptr<const Surface> surface,
                             std::vector<Form> alpha_forms, std::vector<Form> beta_forms)
    : surface_(std::move(surface)),
      alpha_forms_(std::move(alpha_forms)),
      beta_forms_(std::move(beta_forms)) {}

const FlatTorus& HarmonicBasis::torus() const {
  const auto* t = dynamic_cast<const FlatTorus*>(surface_.get());
  if (t == nullptr) throw Error("HarmonicBasis: cycles are registered for the flat torus only");
  return *t;
}

CyclePlacement HarmonicBasis::default_placement() const {
  return CyclePlacement{std::vector<double>(genus(), 0.0), std::vector<double>(genus(), 0.0)};
}

Cycle HarmonicBasis::alpha_cycle(int j, const CyclePlacement& placement) const {
  const FlatTorus& t = torus();
  const Complex base = t.from_lattice(0.0, placement.alpha.at(j));
  return Cycle{0, [base](double s) { return base + s; }, [](double) { return Complex(1.0); }};
}

Cycle HarmonicBasis::beta_cycle(int j, const CyclePlacement& placement) const {
  const FlatTorus& t = torus();
  const Complex base = t.from_lattice(placement.beta.at(j), 0.0);
  const Complex tau = t.tau();
  return Cycle{0, [base, tau](double s) { return base + s * tau; },
               [tau](double) { return tau; }};
}

double HarmonicBasis::distance_to_alpha(int j, const CyclePlacement& placement,
                                        const ChartPoint& p) const {
  const FlatTorus& t = torus();
  const auto lc = t.lattice_coords(p.z);
  return wrapped_gap(lc[1] - placement.alpha.at(j)) * t.tau().imag();
}

double HarmonicBasis::distance_to_beta(int j, const CyclePlacement& placement,
                                       const ChartPoint& p) const {
  const FlatTorus& t = torus();
  const auto lc = t.lattice_coords(p.z);
  return wrapped_gap(lc[0] - placement.beta.at(j)) * t.tau().imag() / std::abs(t.tau());
}

double HarmonicBasis::clearance(const CyclePlacement& placement,
                                const std::vector<ChartPoint>& points) const {
  double best = 1e300;
  for (int j = 0; j < genus(); ++j) {
    for (const auto& p : points) {
      best = std::min({best, distance_to_alpha(j, placement, p), distance_to_beta(j, placement, p)});
    }
  }
  return best;
}

CyclePlacement HarmonicBasis::place_cycles(const std::vector<ChartPoint>& points) const {
  if (genus() == 0) return {};
  const FlatTorus& t = torus();
  std::vector<double> ss, ts;
  for (const auto& p : points) {
    const auto lc = t.lattice_coords(p.z);
    ss.push_back(lc[0]);
    ts.push_back(lc[1]);
  }
  return CyclePlacement{{mid_widest_gap(ts)}, {mid_widest_gap(ss)}};
}

Eigen::MatrixXd PeriodMatrix::assembled() const {
  const int g = genus();
  Eigen::MatrixXd m(2 * g, 2 * g);
  m << P, R, R.transpose(), Q;
  return m;
}

HarmonicBasis harmonic_basis(std::shared_ptr<const Surface> surface) {
  if (!surface) throw Error("harmonic_basis: null surface");
  if (surface->genus() == 0) return HarmonicBasis(surface, {}, {});
  auto torus = std::dynamic_pointer_cast<const FlatTorus>(surface);
  if (!torus) {
    throw Error("harmonic_basis: no registered homology cycles for surface " + surface->name());
  }
  // Solve the period conditions for constant forms c_x dx + c_y dy:
  //   dU_alpha: periods (alpha, beta) = (0, 1);  dU_beta: (-1, 0).
  const Complex tau = torus->tau();
  const double T = tau.imag();
  const Covector du_alpha{0.0, 1.0 / T};
  const Covector du_beta{-1.0, tau.real() / T};
  return HarmonicBasis(surface, {[du_alpha](const ChartPoint&) { return du_alpha; }},
                       {[du_beta](const ChartPoint&) { return du_beta; }});
}

double contour_integral(const Cycle& cycle,
                        const std::function<Covector(const ChartPoint&)>& form) {
  return numerics::periodic_trapezoid(
      [&](double s) {
        return form(ChartPoint{cycle.chart, cycle.point(s)}).apply(cycle.tangent(s));
      },
      kInitialNodes, kQuadratureTol, kMaxNodes);
}

PeriodMatrix period_matrix(const HarmonicBasis& basis) {
  const int g = basis.genus();
  PeriodMatrix pm{Eigen::MatrixXd::Zero(g, g), Eigen::MatrixXd::Zero(g, g),
                  Eigen::MatrixXd::Zero(g, g)};
  const CyclePlacement placement = basis.default_placement();
  for (int k = 0; k < g; ++k) {
    const Cycle ak = basis.alpha_cycle(k, placement);
    const Cycle bk = basis.beta_cycle(k, placement);
    for (int j = 0; j < g; ++j) {
      const auto star_alpha = [&](const ChartPoint& p) { return basis.d_alpha(j, p).star(); };
      const auto star_beta = [&](const ChartPoint& p) { return basis.d_beta(j, p).star(); };
      pm.P(k, j) = -contour_integral(bk, star_beta);
      pm.Q(k, j) = -contour_integral(ak, star_alpha);
      pm.R(k, j) = contour_integral(bk, star_alpha);
    }
  }
  return pm;
}

StarredBasis star_basis_transform(const HarmonicBasis& basis, const PeriodMatrix& pm,
                                  const ChartPoint& p) {
  const int g = basis.genus();
  StarredBasis out;
  out.star_alpha.assign(g, Covector{});
  out.star_beta.assign(g, Covector{});
  for (int k = 0; k < g; ++k) {
    for (int j = 0; j < g; ++j) {
      const Covector da = basis.d_alpha(j, p), db = basis.d_beta(j, p);
      out.star_alpha[k] = out.star_alpha[k] + pm.R(j, k) * da + pm.Q(k, j) * db;
      out.star_beta[k] = out.star_beta[k] - pm.P(k, j) * da - pm.R(k, j) * db;
    }
  }
  return out;
}

Covector star_dG(const GreenModel& green, const ChartPoint& z, const ChartPoint& w) {
  return real_form_from_dz(green.gradient(z, w)).star();
}

ConjugatePeriods conjugate_green_periods(const GreenModel& green, const HarmonicBasis& basis,
                                         const std::vector<PointVortex>& vortices,
                                         const CyclePlacement& placement,
                                         PeriodEvaluation method) {
  const int g = basis.genus();
  ConjugatePeriods out{Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g)};
  if (g == 0) return out;
  const auto* torus = dynamic_cast<const FlatTorus*>(&green.surface());
  if (method == PeriodEvaluation::ClosedForm && torus == nullptr) {
    throw Error("conjugate_green_periods: no closed form registered for " + green.surface().name());
  }
  for (const auto& v : vortices) {
    for (int j = 0; j < g; ++j) {
      if (basis.distance_to_alpha(j, placement, v.position) < kCycleClearance ||
          basis.distance_to_beta(j, placement, v.position) < kCycleClearance) {
        throw VortexOnCycleError("conjugate_green_periods: vortex within " +
                                 std::to_string(kCycleClearance) + " of a cycle");
      }
    }
  }
  if (torus != nullptr && method != PeriodEvaluation::Quadrature) {
    // U_alpha(w) = 1/2 - frac(t0 - t_w), U_beta(w) = frac(s0 - s_w) - 1/2:
    // mean zero in w, gradients dU_alpha and dU_beta, unit jump on the cycle.
    auto frac = [](double x) { return x - std::floor(x); };
    for (const auto& v : vortices) {
      const auto lc = torus->lattice_coords(v.position.z);
      out.alpha(0) += v.strength * (0.5 - frac(placement.alpha.at(0) - lc[1]));
      out.beta(0) += v.strength * (frac(placement.beta.at(0) - lc[0]) - 0.5);
    }
    return out;
  }
  const auto form = [&](const ChartPoint& z) {
    Covector sum{};
    for (const auto& v : vortices) {
      if (v.strength != 0.0) sum = sum + v.strength * star_dG(green, z, v.position);
    }
    return sum;
  };
  for (int j = 0; j < g; ++j) {
    out.alpha(j) = contour_integral(basis.alpha_cycle(j, placement), form);
    out.beta(j) = contour_integral(basis.beta_cycle(j, placement), form);
  }
  return out;
}

}  // namespace surfvortex
