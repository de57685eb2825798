#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "surfvortex/connections.hpp"
#include "surfvortex/types.hpp"

namespace surfvortex {

/// A point moved to another chart together with d(new)/d(old) at that point,
/// which is what a tangent vector gets multiplied by.
struct ChartChange {
  ChartPoint point;
  Complex jacobian{1.0, 0.0};
};

/// Closed surface given by a finite atlas of conformal charts and a positive
/// density lambda, so that the metric reads lambda(z)|dz|.
class Surface {
 public:
  using ScalarField = std::function<double(const ChartPoint&)>;

  virtual ~Surface() = default;

  virtual std::string name() const = 0;
  virtual int genus() const = 0;
  virtual int chart_count() const = 0;

  virtual double density(const ChartPoint& p) const = 0;
  /// r = 2 d/dz log lambda in p's chart. The default differentiates density().
  virtual Complex affine(const ChartPoint& p) const;
  MetricField metric_field(int chart) const;

  /// Total area, closed form.
  virtual double volume() const = 0;
  /// Total area by quadrature of lambda^2 over the atlas.
  double volume_by_quadrature() const { return integrate([](const ChartPoint&) { return 1.0; }); }

  /// Integral of f against the area form lambda^2 dx dy. If `singular` is
  /// given, the quadrature is graded towards that point so integrable
  /// logarithmic singularities there are resolved.
  virtual double integrate(const ScalarField& f,
                           std::optional<ChartPoint> singular = std::nullopt) const = 0;

  /// Coordinate of p in the requested chart; DomainError if p is not covered.
  virtual ChartPoint to_chart(const ChartPoint& p, int chart) const = 0;
  virtual HolomorphicMap transition(int from, int to) const = 0;
  virtual bool in_atlas(const ChartPoint& p) const = 0;

  /// Move p to its preferred chart (away from chart edges, or wrapped into
  /// the fundamental domain).
  virtual ChartChange recenter(const ChartPoint& p) const = 0;
  ChartPoint canonical(const ChartPoint& p) const { return recenter(p).point; }

  /// Coordinate difference q - base expressed in base's chart. On the torus
  /// the nearest lattice image of q is used.
  virtual Complex relative_coordinate(const ChartPoint& q, const ChartPoint& base) const;

  /// Geodesic distance.
  virtual double distance(const ChartPoint& a, const ChartPoint& b) const = 0;
  /// Endpoint of the geodesic leaving p with chart velocity v after unit time.
  virtual ChartPoint exp_map(const ChartPoint& p, Complex v) const = 0;
  /// Midpoint of the shortest geodesic from a to b.
  virtual ChartPoint midpoint(const ChartPoint& a, const ChartPoint& b) const = 0;

  double curvature(const ChartPoint& p) const;

 protected:
  void require_chart(const ChartPoint& p) const;
};

/// Unit sphere, two stereographic charts related by z~ = 1/z.
class Sphere final : public Surface {
 public:
  std::string name() const override { return "sphere"; }
  int genus() const override { return 0; }
  int chart_count() const override { return 2; }

  double density(const ChartPoint& p) const override;
  Complex affine(const ChartPoint& p) const override;
  double volume() const override { return 4.0 * kPi; }
  double integrate(const ScalarField& f,
                   std::optional<ChartPoint> singular = std::nullopt) const override;

  ChartPoint to_chart(const ChartPoint& p, int chart) const override;
  HolomorphicMap transition(int from, int to) const override;
  bool in_atlas(const ChartPoint& p) const override;
  ChartChange recenter(const ChartPoint& p) const override;

  double distance(const ChartPoint& a, const ChartPoint& b) const override;
  ChartPoint exp_map(const ChartPoint& p, Complex v) const override;
  ChartPoint midpoint(const ChartPoint& a, const ChartPoint& b) const override;

  /// Embedding in R^3. Chart 0 maps 0 to the south pole, chart 1 maps 0 to
  /// the north pole.
  static std::array<double, 3> embed(const ChartPoint& p);
  /// Inverse of embed; picks chart 0 unless the point is near the north pole.
  static ChartPoint unembed(const std::array<double, 3>& x);

  /// |z| beyond which recenter() switches charts.
  static constexpr double kSwitchRadius = 2.0;
};

/// Flat torus C / (Z + tau Z) in one wrapped chart.
class FlatTorus final : public Surface {
 public:
  explicit FlatTorus(Complex tau = Complex(0.0, 1.0));

  Complex tau() const { return tau_; }

  std::string name() const override { return "torus"; }
  int genus() const override { return 1; }
  int chart_count() const override { return 1; }

  double density(const ChartPoint& p) const override;
  Complex affine(const ChartPoint& p) const override;
  double volume() const override { return tau_.imag(); }
  double integrate(const ScalarField& f,
                   std::optional<ChartPoint> singular = std::nullopt) const override;

  ChartPoint to_chart(const ChartPoint& p, int chart) const override;
  HolomorphicMap transition(int from, int to) const override;
  bool in_atlas(const ChartPoint& p) const override;
  ChartChange recenter(const ChartPoint& p) const override;
  Complex relative_coordinate(const ChartPoint& q, const ChartPoint& base) const override;

  double distance(const ChartPoint& a, const ChartPoint& b) const override;
  ChartPoint exp_map(const ChartPoint& p, Complex v) const override;
  ChartPoint midpoint(const ChartPoint& a, const ChartPoint& b) const override;

  /// Lattice coordinates (s, t) with z = s + t tau.
  std::array<double, 2> lattice_coords(Complex z) const;
  Complex from_lattice(double s, double t) const { return s + t * tau_; }
  /// Shortest representative of z modulo the lattice.
  Complex reduce(Complex d) const;

 private:
  Complex tau_;
};

/// Schottky double of the unit disk. Chart 0 is the extended coordinate z
/// (front |z| <= 1, back |z| > 1 via the Schwarz function 1/z), chart 1 is
/// zeta = 1/z. The metric is |dz| on the front and |z|^-2 |dz| on the back.
class DiskDouble final : public Surface {
 public:
  std::string name() const override { return "disk-double"; }
  int genus() const override { return 0; }
  int chart_count() const override { return 2; }

  double density(const ChartPoint& p) const override;
  Complex affine(const ChartPoint& p) const override;
  double volume() const override { return 2.0 * kPi; }
  double integrate(const ScalarField& f,
                   std::optional<ChartPoint> singular = std::nullopt) const override;

  ChartPoint to_chart(const ChartPoint& p, int chart) const override;
  HolomorphicMap transition(int from, int to) const override;
  bool in_atlas(const ChartPoint& p) const override;
  ChartChange recenter(const ChartPoint& p) const override;

  double distance(const ChartPoint& a, const ChartPoint& b) const override;
  ChartPoint exp_map(const ChartPoint& p, Complex v) const override;
  ChartPoint midpoint(const ChartPoint& a, const ChartPoint& b) const override;

  /// Point and velocity folded onto the closed unit disk, with the sheet.
  struct Folded {
    Complex u;
    Complex du;
    bool front;
  };
  Folded fold(const ChartPoint& p, Complex v) const;
  ChartPoint unfold(const Folded& f) const;
};

// ---------------------------------------------------------------------------
// Geodesics

struct GeodesicState {
  ChartPoint point;
  Complex velocity;  // chart units per parameter
};

struct GeodesicOptions {
  /// If set, dt is halved until the path residual is below this value.
  std::optional<double> residual_tolerance;
  int max_halvings = 8;
};

struct GeodesicPath {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<GeodesicState> states;
  std::vector<double> speed;  // lambda |z'|

  std::vector<ChartPoint> points() const;
};

/// Integrates z'' + r(z) z'^2 = 0 with classic RK4 on (z, z'), switching
/// charts between steps. Samples every step, including t = 0 and t = T.
GeodesicPath geodesic_integrate(const Surface& s, const GeodesicState& g0, double T, double dt,
                                const GeodesicOptions& options = {});

/// max over interior samples of |d/dt arg z' + Im(r(z) z')| with centered
/// differences; samples are equally spaced in the parameter with step dt.
double geodesic_residual(const Surface& s, const std::vector<ChartPoint>& path, double dt);

}  // namespace surfvortex
