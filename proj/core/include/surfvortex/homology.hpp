#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "surfvortex/greens.hpp"
#include "surfvortex/surface.hpp"
#include "surfvortex/types.hpp"

namespace surfvortex {

/// Closed curve c(s), s in [0, 1), in a single chart.
struct Cycle {
  int chart = 0;
  std::function<Complex(double)> point;
  std::function<Complex(double)> tangent;  // dc/ds
};

/// Where the cycle representatives sit. On the torus alpha_j is the loop
/// t = alpha[j] and beta_j the loop s = beta[j], in lattice coordinates
/// z = s + t tau.
struct CyclePlacement {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Harmonic one-forms dU_alpha_j, dU_beta_j normalized by
///   oint_{alpha_k} (-dU_beta_j) = delta_kj,  oint_{beta_k} dU_alpha_j = delta_kj,
/// all other alpha/beta periods zero.
class HarmonicBasis {
 public:
  using Form = std::function<Covector(const ChartPoint&)>;

  HarmonicBasis() = default;
  HarmonicBasis(std::shared_ptr<const Surface> surface, std::vector<Form> alpha_forms,
                std::vector<Form> beta_forms);

  int genus() const { return static_cast<int>(alpha_forms_.size()); }
  const Surface& surface() const { return *surface_; }

  Covector d_alpha(int j, const ChartPoint& p) const { return alpha_forms_.at(j)(p); }
  Covector d_beta(int j, const ChartPoint& p) const { return beta_forms_.at(j)(p); }

  /// Default representatives (torus: both through the origin).
  CyclePlacement default_placement() const;
  Cycle alpha_cycle(int j, const CyclePlacement& placement) const;
  Cycle beta_cycle(int j, const CyclePlacement& placement) const;

  /// Chart distance from p to each representative (torus: perpendicular
  /// distance to the nearest lattice translate).
  double distance_to_alpha(int j, const CyclePlacement& placement, const ChartPoint& p) const;
  double distance_to_beta(int j, const CyclePlacement& placement, const ChartPoint& p) const;
  double clearance(const CyclePlacement& placement, const std::vector<ChartPoint>& points) const;

  /// Representatives placed in the middle of the widest gap between the
  /// given points.
  CyclePlacement place_cycles(const std::vector<ChartPoint>& points) const;

 private:
  const FlatTorus& torus() const;

  std::shared_ptr<const Surface> surface_;
  std::vector<Form> alpha_forms_;
  std::vector<Form> beta_forms_;
};

/// Blocks of the symmetric positive definite period matrix [P R; R^T Q].
struct PeriodMatrix {
  Eigen::MatrixXd P, Q, R;

  int genus() const { return static_cast<int>(P.rows()); }
  Eigen::MatrixXd assembled() const;
};

/// Genus 0 surfaces give an empty basis; the flat torus a constant one.
HarmonicBasis harmonic_basis(std::shared_ptr<const Surface> surface);

/// Trapezoid quadrature of a one-form over a cycle: 512 nodes, doubled
/// until successive values differ by less than 1e-9.
double contour_integral(const Cycle& cycle, const std::function<Covector(const ChartPoint&)>& form);

/// P = -oint_beta *dU_beta, Q = -oint_alpha *dU_alpha, R = oint_beta *dU_alpha,
/// each block entry (k, j) pairing cycle k with form j.
PeriodMatrix period_matrix(const HarmonicBasis& basis);

struct StarredBasis {
  std::vector<Covector> star_alpha;
  std::vector<Covector> star_beta;
};

/// (*dU_alpha; *dU_beta) = (R^T Q; -P -R)(dU_alpha; dU_beta) at p.
StarredBasis star_basis_transform(const HarmonicBasis& basis, const PeriodMatrix& pm,
                                  const ChartPoint& p);

struct PointVortex {
  ChartPoint position;
  double strength = 0.0;
};

struct ConjugatePeriods {
  Eigen::VectorXd alpha;  // oint_alpha_j *dG^omega
  Eigen::VectorXd beta;   // oint_beta_j *dG^omega
};

/// *dG(., w) as a covector at z.
Covector star_dG(const GreenModel& green, const ChartPoint& z, const ChartPoint& w);

/// Minimum vortex distance to the cycles below which quadrature is refused.
inline constexpr double kCycleClearance = 1e-3;

enum class PeriodEvaluation {
  Quadrature,  // contour quadrature of *dG^omega
  ClosedForm,  // sawtooth U_gamma(w) on the flat torus
  Auto,        // closed form where registered, quadrature otherwise
};

ConjugatePeriods conjugate_green_periods(const GreenModel& green, const HarmonicBasis& basis,
                                         const std::vector<PointVortex>& vortices,
                                         const CyclePlacement& placement,
                                         PeriodEvaluation method = PeriodEvaluation::Quadrature);

}  // namespace surfvortex
