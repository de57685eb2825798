#pragma once

#include <memory>
#include <vector>

#include "surfvortex/dynamics.hpp"
#include "surfvortex/greens.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex {

/// w1 = w + u, w2 = w - u in a common chart (w1's chart).
struct CenterArrow {
  ChartPoint center;
  Complex arrow;
};

CenterArrow center_arrow(const Surface& s, const ChartPoint& w1, const ChartPoint& w2);

/// Direction of the comparison geodesic in kimura_deviation.
enum class GeodesicStart {
  MatchedVelocity,   // the pair centre's actual initial direction
  PerpendicularArrow // the ideal direction -i u0 (Gamma_1 > 0) / +i u0
};

struct PairRun {
  std::shared_ptr<const VortexModel> model;
  ChartPoint center;
  Complex direction{1.0, 0.0};  // u0, normalized internally
  double strength = 4.0 * kPi;  // Gamma_1; the pair is (+Gamma_1, -Gamma_1)
  std::vector<double> eps{0.1, 0.05, 0.025};
  Scheme scheme = Scheme::RK4;
  double dt = 1e-3;       // in rescaled time
  double window = 1.0;    // metric arc length of the centre path to compare
  long max_steps = 2000000;
  GeodesicStart start = GeodesicStart::PerpendicularArrow;
  bool parallel = true;
};

struct PairSample {
  double t = 0.0;            // rescaled time
  double arc_length = 0.0;   // metric arc length of the centre path so far
  ChartPoint center;         // (w1 + w2) / 2
  Complex arrow;             // u in the centre-arrow chart
  double u_lambda = 0.0;     // |u| lambda(w)
  double angle = 0.0;        // arg u - arg w'
  double deviation = 0.0;    // distance to the comparison geodesic
};

struct PairDiagnostics {
  std::vector<PairSample> samples;
  double u_lambda_drift = 0.0;   // max relative change of |u| lambda(w)
  double angle_defect = 0.0;     // max |arg u - arg w' - sign pi/2|
  double center_residual = 0.0;  // geodesic_residual of the centre path
  double deviation = 0.0;        // max distance to the comparison geodesic
};

/// Pair invariants along a two-vortex trajectory sampled at uniform
/// (rescaled) time step `dt`. Deviation fields are left at zero.
PairDiagnostics pair_diagnostics(const VortexModel& m, const std::vector<PhaseState>& states,
                                 double dt);

struct KimuraRow {
  double eps = 0.0;
  double deviation = 0.0;
  double u_lambda_drift = 0.0;
  double angle_defect = 0.0;
  double center_residual = 0.0;
  long steps = 0;
};

/// Pair run for one separation eps, with geodesic deviation filled in.
PairDiagnostics run_pair(const PairRun& run, double eps);

/// One row per eps, in the order of run.eps (entries run concurrently).
std::vector<KimuraRow> kimura_deviation(const PairRun& run);

/// -6 (dh1/dw - 2 h2), dh1/dw by central differences with step 1e-4.
Complex q_robin(const GreenModel& m, const ChartPoint& w);

/// Im(m dz / (z - w)^2) at z, z - w taken in w's chart.
Covector dipole_field(const Surface& s, const ChartPoint& w, Complex m, const ChartPoint& z);

}  // namespace surfvortex
