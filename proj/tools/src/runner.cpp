#include "surfvortex_cli/runner.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "surfvortex/dynamics.hpp"
#include "surfvortex/errors.hpp"
#include "surfvortex/greens.hpp"
#include "surfvortex/numerics.hpp"
#include "surfvortex/pairlab.hpp"
#include "surfvortex/schottky.hpp"

namespace surfvortex::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Thrown when the output directory or a file cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
    if (!out_) throw OutputError("cannot write " + path.string());
    out_ << header << '\n';
  }
  CsvWriter& cell(double v) { return raw(format_number(v)); }
  CsvWriter& cell(long v) { return raw(std::to_string(v)); }
  CsvWriter& cell(int v) { return raw(std::to_string(v)); }
  CsvWriter& raw(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  void end() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ofstream out_;
  bool first_ = true;
};

// Pass/fail bookkeeping; every threshold ends up in the summary.
class Checks {
 public:
  void upper(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, "<=", value <= tolerance);
  }
  void lower(const std::string& name, double value, double tolerance) {
    add(name, value, tolerance, ">=", value >= tolerance);
  }
  void flag(const std::string& name, bool ok) {
    json c;
    c["pass"] = ok;
    checks_[name] = c;
    pass_ = pass_ && ok;
  }
  bool pass() const { return pass_; }
  const json& to_json() const { return checks_; }

 private:
  void add(const std::string& name, double value, double tolerance, const char* op, bool ok) {
    json c;
    c["value"] = value;
    c["tolerance"] = tolerance;
    c["compare"] = op;
    c["pass"] = ok;
    checks_[name] = c;
    pass_ = pass_ && ok;
  }

  json checks_ = json::object();
  bool pass_ = true;
};

double tolerance(const ExperimentConfig& c, const std::string& key, double fallback) {
  const auto it = c.tolerances.find(key);
  return it == c.tolerances.end() ? fallback : it->second;
}

std::optional<double> optional_tolerance(const ExperimentConfig& c, const std::string& key) {
  const auto it = c.tolerances.find(key);
  if (it == c.tolerances.end()) return std::nullopt;
  return it->second;
}

double param(const ExperimentConfig& c, const std::string& key, double fallback) {
  if (!c.experiment.contains(key)) return fallback;
  const json& v = c.experiment[key];
  if (!v.is_number()) throw ConfigError("experiment." + key + ": expected a number");
  return v.get<double>();
}

Complex param_complex(const ExperimentConfig& c, const std::string& key, Complex fallback) {
  if (!c.experiment.contains(key)) return fallback;
  const json& v = c.experiment[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("experiment." + key + ": expected [x, y]");
  }
  return Complex(v[0].get<double>(), v[1].get<double>());
}

int param_chart(const ExperimentConfig& c, const std::string& key) {
  if (!c.experiment.contains(key)) return 0;
  const json& v = c.experiment[key];
  if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 1) {
    throw ConfigError("experiment." + key + ": chart must be 0 or 1");
  }
  return v.get<int>();
}

std::vector<double> param_list(const ExperimentConfig& c, const std::string& key,
                               std::vector<double> fallback) {
  if (!c.experiment.contains(key)) return fallback;
  const json& v = c.experiment[key];
  if (!v.is_array() || v.empty()) throw ConfigError("experiment." + key + ": expected a nonempty array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("experiment." + key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_chart(const Surface& s, const ChartPoint& p, const std::string& where) {
  if (p.chart >= s.chart_count()) throw ConfigError(where + ": chart out of range for " + s.name());
}

VortexModel make_model(const ExperimentConfig& c) {
  auto surface = make_surface(c.surface);
  if (!make_green_model(surface)) {
    throw ConfigError("surface.kind: no Green function available for " + surface->name());
  }
  return VortexModel::make(surface);
}

PhaseState initial_state(const ExperimentConfig& c, const VortexModel& m) {
  PhaseState st;
  st.vortices = c.vortices;
  for (std::size_t k = 0; k < st.vortices.size(); ++k) {
    check_chart(*m.surface, st.vortices[k].position, "vortices[" + std::to_string(k) + "]");
  }
  st.a = Eigen::Map<const Eigen::VectorXd>(c.a.data(), static_cast<Eigen::Index>(c.a.size()));
  st.b = Eigen::Map<const Eigen::VectorXd>(c.b.data(), static_cast<Eigen::Index>(c.b.size()));
  return st;
}

json base_summary(const std::string& command, const ExperimentConfig& c) {
  json s;
  s["command"] = command;
  s["schema_version"] = kSchemaVersion;
  s["surface"] = {{"kind", c.surface.kind},
                  {"tau", {c.surface.tau.real(), c.surface.tau.imag()}}};
  s["seed"] = c.seed;
  return s;
}

void write_summary(const fs::path& dir, json summary, const Checks& checks) {
  summary["checks"] = checks.to_json();
  json tol = json::object();
  for (auto it = checks.to_json().begin(); it != checks.to_json().end(); ++it) {
    if (it.value().contains("tolerance")) tol[it.key()] = it.value()["tolerance"];
  }
  summary["tolerances"] = tol;
  summary["pass"] = checks.pass();
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw OutputError("cannot write " + (dir / "summary.json").string());
  out << summary.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int run_simulate(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  const VortexModel m = make_model(c);
  const PhaseState st0 = initial_state(c, m);

  IntegrateOptions opt;
  opt.scheme = parse_scheme(c.integrator.scheme);
  opt.dt = c.integrator.dt;
  opt.stride = c.integrator.stride;
  const Trajectory traj = integrate(m, st0, c.integrator.T, opt);

  const int g = m.genus();
  std::string header = "t,k,chart,x,y";
  for (int i = 1; i <= g; ++i) header += ",a_" + std::to_string(i);
  for (int i = 1; i <= g; ++i) header += ",b_" + std::to_string(i);
  header += ",H";
  CsvWriter csv(dir / "trajectory.csv", header);
  double position_drift = 0.0;
  const PhaseState& first = traj.states.front();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const PhaseState& st = traj.states[i];
    for (std::size_t k = 0; k < st.vortices.size(); ++k) {
      const ChartPoint& p = st.vortices[k].position;
      position_drift =
          std::max(position_drift, m.surface->distance(p, first.vortices[k].position));
      csv.cell(st.t).cell(static_cast<long>(k)).cell(p.chart).cell(p.z.real()).cell(p.z.imag());
      for (int j = 0; j < g; ++j) csv.cell(st.a(j));
      for (int j = 0; j < g; ++j) csv.cell(st.b(j));
      csv.cell(traj.energy[i]);
      csv.end();
    }
  }

  const double drift = traj.max_relative_energy_drift();
  Checks checks;
  checks.upper("hamiltonian_drift_rel", drift, tolerance(c, "hamiltonian_drift_rel", 1e-8));
  if (auto tol = optional_tolerance(c, "position_drift")) {
    checks.upper("max_position_drift", position_drift, *tol);
  }

  json summary = base_summary("simulate", c);
  summary["scheme"] = c.integrator.scheme;
  summary["dt"] = c.integrator.dt;
  summary["T"] = c.integrator.T;
  summary["vortex_count"] = c.vortices.size();
  summary["genus"] = g;
  summary["hamiltonian_initial"] = traj.energy.front();
  summary["hamiltonian_final"] = traj.energy.back();
  summary["hamiltonian_drift_rel"] = drift;
  summary["max_position_drift"] = position_drift;
  summary["rebaseline_count"] = traj.rebaselines.size();

  if (c.experiment.value("time_reversal", false)) {
    IntegrateOptions back = opt;
    back.time_scale = -1.0;
    const Trajectory rev = integrate(m, traj.states.back(), c.integrator.T, back);
    double err = 0.0;
    for (std::size_t k = 0; k < st0.vortices.size(); ++k) {
      err = std::max(err, m.surface->distance(rev.states.back().vortices[k].position,
                                              first.vortices[k].position));
    }
    const CirculationState c0 = circulation_state(m, first);
    const CirculationState c1 = circulation_state(m, rev.states.back());
    if (g > 0) {
      err = std::max(err, (c0.A - c1.A).cwiseAbs().maxCoeff());
      err = std::max(err, (c0.B - c1.B).cwiseAbs().maxCoeff());
    }
    summary["time_reversal_error"] = err;
    checks.upper("time_reversal_error", err, tolerance(c, "time_reversal", 1e-7));
  }

  write_summary(dir, summary, checks);
  log << "simulate: H drift " << format_number(drift) << ", position drift "
      << format_number(position_drift) << '\n';
  return checks.pass() ? kExitOk : kExitToleranceFailure;
}

int run_kimura(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  auto model = std::make_shared<const VortexModel>(make_model(c));
  PairRun run;
  run.model = model;
  run.center = ChartPoint{param_chart(c, "center_chart"), param_complex(c, "center", 0.0)};
  check_chart(*model->surface, run.center, "experiment.center");
  run.direction = param_complex(c, "direction", 1.0);
  if (std::abs(run.direction) == 0.0) throw ConfigError("experiment.direction: must be nonzero");
  run.strength = param(c, "strength", 4.0 * kPi);
  if (run.strength == 0.0) throw ConfigError("experiment.strength: must be nonzero");
  run.eps = param_list(c, "eps", run.eps);
  for (double e : run.eps) {
    if (!(e > 0.0)) throw ConfigError("experiment.eps: values must be positive");
  }
  run.window = param(c, "window", run.window);
  run.scheme = parse_scheme(c.integrator.scheme);
  run.dt = c.integrator.dt;
  const std::string start = c.experiment.value("start", std::string("perpendicular"));
  if (start == "perpendicular") {
    run.start = GeodesicStart::PerpendicularArrow;
  } else if (start == "matched") {
    run.start = GeodesicStart::MatchedVelocity;
  } else {
    throw ConfigError("experiment.start: expected perpendicular or matched");
  }

  const std::vector<KimuraRow> rows = kimura_deviation(run);

  CsvWriter csv(dir / "deviation.csv", "eps,deviation,ulambda_drift,angle_defect");
  json table = json::array();
  for (const auto& r : rows) {
    csv.cell(r.eps).cell(r.deviation).cell(r.u_lambda_drift).cell(r.angle_defect);
    csv.end();
    table.push_back({{"eps", r.eps},
                     {"deviation", r.deviation},
                     {"ulambda_drift", r.u_lambda_drift},
                     {"angle_defect", r.angle_defect},
                     {"center_residual", r.center_residual},
                     {"steps", r.steps}});
  }

  Checks checks;
  double drift = 0.0;
  for (const auto& r : rows) drift = std::max(drift, r.u_lambda_drift);
  checks.upper("ulambda_drift", drift, tolerance(c, "ulambda_drift", 0.05));
  if (auto dev_max = optional_tolerance(c, "deviation_max")) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.deviation);
    checks.upper("deviation_max", worst, *dev_max);
  } else {
    bool decreasing = true;
    bool angle_decreasing = true;
    double ratio = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      decreasing = decreasing && rows[i].deviation < rows[i - 1].deviation;
      angle_decreasing = angle_decreasing && rows[i].angle_defect < rows[i - 1].angle_defect;
      ratio = std::max(ratio, rows[i].deviation / rows[i - 1].deviation);
    }
    checks.flag("deviation_decreasing", decreasing);
    checks.flag("angle_defect_decreasing", angle_decreasing);
    if (rows.size() > 1) checks.upper("deviation_ratio", ratio, tolerance(c, "deviation_ratio", 0.7));
  }

  json summary = base_summary("kimura", c);
  summary["scheme"] = c.integrator.scheme;
  summary["dt"] = run.dt;
  summary["window"] = run.window;
  summary["strength"] = run.strength;
  summary["start"] = start;
  summary["center"] = {run.center.z.real(), run.center.z.imag()};
  summary["center_chart"] = run.center.chart;
  summary["direction"] = {run.direction.real(), run.direction.imag()};
  summary["deviation_table"] = table;
  write_summary(dir, summary, checks);
  for (const auto& r : rows) {
    log << "kimura: eps " << format_number(r.eps) << " deviation " << format_number(r.deviation)
        << '\n';
  }
  return checks.pass() ? kExitOk : kExitToleranceFailure;
}

int run_geodesic(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  auto surface = make_surface(c.surface);
  const ChartPoint p0{param_chart(c, "chart"), param_complex(c, "start", 0.0)};
  check_chart(*surface, p0, "experiment.start");
  Complex v0 = param_complex(c, "velocity", 1.0);
  if (std::abs(v0) == 0.0) throw ConfigError("experiment.velocity: must be nonzero");
  // Unit metric speed by default, so T is the arc length.
  const bool unit_speed = c.experiment.value("unit_speed", true);
  if (unit_speed) v0 /= surface->density(p0) * std::abs(v0);
  const double dt = c.integrator.dt;

  const GeodesicPath path = geodesic_integrate(*surface, GeodesicState{p0, v0}, c.integrator.T, dt);

  CsvWriter csv(dir / "geodesic.csv", "t,chart,x,y,speed");
  const std::size_t n = path.states.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(c.integrator.stride) != 0 && i + 1 != n) continue;
    const ChartPoint& p = path.states[i].point;
    csv.cell(path.t[i]).cell(p.chart).cell(p.z.real()).cell(p.z.imag()).cell(path.speed[i]);
    csv.end();
  }

  const double s0 = path.speed.front();
  double speed_drift = 0.0;
  for (double s : path.speed) speed_drift = std::max(speed_drift, std::abs(s - s0) / s0);
  const double residual = n >= 5 ? geodesic_residual(*surface, path.points(), path.dt) : 0.0;
  const double closure = surface->distance(path.states.back().point, p0);

  Checks checks;
  checks.upper("speed_drift_rel", speed_drift, tolerance(c, "speed_drift", 1e-8));
  if (auto tol = optional_tolerance(c, "residual")) checks.upper("residual", residual, *tol);
  if (auto tol = optional_tolerance(c, "closure")) checks.upper("closure", closure, *tol);

  json summary = base_summary("geodesic", c);
  summary["dt"] = path.dt;
  summary["T"] = c.integrator.T;
  summary["unit_speed"] = unit_speed;
  summary["steps"] = n - 1;
  summary["speed_initial"] = s0;
  summary["speed_drift_rel"] = speed_drift;
  summary["residual"] = residual;
  summary["closure"] = closure;
  summary["arc_length"] = s0 * c.integrator.T;
  write_summary(dir, summary, checks);
  log << "geodesic: speed drift " << format_number(speed_drift) << ", closure "
      << format_number(closure) << '\n';
  return checks.pass() ? kExitOk : kExitToleranceFailure;
}

int run_green_check(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  auto surface = make_surface(c.surface);
  auto green = make_green_model(surface);
  if (!green) throw ConfigError("surface.kind: no Green function available for " + surface->name());
  const double samples = param(c, "samples", 20);
  if (!(samples >= 1) || samples != std::floor(samples)) {
    throw ConfigError("experiment.samples: expected a positive integer");
  }
  const int n = static_cast<int>(samples);

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_point = [&]() {
    if (c.surface.kind == "sphere") {
      std::array<double, 3> x{normal(rng), normal(rng), normal(rng)};
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      for (double& v : x) v /= r;
      return Sphere::unembed(x);
    }
    const auto& torus = static_cast<const FlatTorus&>(*surface);
    const double s = unit(rng);
    const double t = unit(rng);
    return ChartPoint{0, torus.from_lattice(s, t)};
  };
  std::vector<std::pair<ChartPoint, ChartPoint>> pairs;
  for (int i = 0; i < n; ++i) {
    const ChartPoint z = random_point();
    const ChartPoint w = random_point();
    pairs.emplace_back(z, w);
  }

  const double volume = surface->volume();
  double symmetry = 0.0;
  double laplacian = 0.0;
  int laplacian_count = 0;
  for (const auto& [z, w] : pairs) {
    if (surface->distance(z, w) < 1e-3) continue;
    symmetry = std::max(symmetry, std::abs(green->green(z, w) - green->green(w, z)));
    if (surface->distance(z, w) < 0.2) continue;
    const auto g = [&](Complex x) { return green->green(ChartPoint{z.chart, x}, w); };
    const double lam = surface->density(z);
    laplacian = std::max(laplacian,
                         std::abs(numerics::laplacian(g, z.z, 1e-3) - lam * lam / volume));
    ++laplacian_count;
  }
  double mean_zero = 0.0;
  for (int i = 0; i < std::min(n, 3); ++i) {
    mean_zero = std::max(mean_zero, std::abs(green->mean_integral(pairs[i].second)));
  }
  double h11 = 0.0;
  for (int i = 0; i < std::min(n, 5); ++i) {
    const ChartPoint& w = pairs[i].first;
    const double lam = surface->density(w);
    h11 = std::max(h11, std::abs(green->regular_coeffs(w).h11 - kPi * lam * lam / (2.0 * volume)));
  }

  Checks checks;
  checks.upper("symmetry", symmetry, tolerance(c, "symmetry", 1e-10));
  checks.upper("mean_zero", mean_zero, tolerance(c, "mean_zero", 1e-6));
  checks.upper("laplacian", laplacian, tolerance(c, "laplacian", 1e-5));
  checks.upper("h11", h11, tolerance(c, "h11", c.surface.kind == "sphere" ? 1e-6 : 1e-4));

  CsvWriter csv(dir / "green_check.csv", "check,max_error,tolerance,pass");
  for (auto it = checks.to_json().begin(); it != checks.to_json().end(); ++it) {
    csv.raw(it.key())
        .cell(it.value()["value"].get<double>())
        .cell(it.value()["tolerance"].get<double>())
        .raw(it.value()["pass"].get<bool>() ? "1" : "0");
    csv.end();
  }

  json summary = base_summary("green-check", c);
  summary["samples"] = n;
  summary["laplacian_samples"] = laplacian_count;
  summary["symmetry"] = symmetry;
  summary["mean_zero"] = mean_zero;
  summary["laplacian"] = laplacian;
  summary["h11"] = h11;
  write_summary(dir, summary, checks);
  log << "green-check: symmetry " << format_number(symmetry) << ", mean " << format_number(mean_zero)
      << ", laplacian " << format_number(laplacian) << ", h11 " << format_number(h11) << '\n';
  return checks.pass() ? kExitOk : kExitToleranceFailure;
}

int run_schottky_check(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  if (c.surface.kind != "disk-double") {
    throw ConfigError("schottky-check: surface.kind must be disk-double");
  }
  const std::vector<double> ns = param_list(c, "samples", {16, 32, 64, 128, 256});
  std::vector<int> counts;
  for (double v : ns) {
    if (v != std::floor(v) || v < 16) throw ConfigError("experiment.samples: integers >= 16 expected");
    counts.push_back(static_cast<int>(v));
  }

  using schottky::BoundaryConnection;
  using schottky::TangentMode;
  CsvWriter csv(dir / "schottky.csv", "n,residual_mean_value,residual_inside,residual_mean_value_fd");
  json table = json::array();
  double finest = 0.0;
  double inside = 0.0;
  int finest_n = 0;
  for (int n : counts) {
    const double mv = schottky::boundary_geodesic_residual(n, BoundaryConnection::MeanValue);
    const double in = schottky::boundary_geodesic_residual(n, BoundaryConnection::Inside);
    const double fd = schottky::boundary_geodesic_residual(n, BoundaryConnection::MeanValue,
                                                           TangentMode::FiniteDifference);
    csv.cell(n).cell(mv).cell(in).cell(fd);
    csv.end();
    table.push_back({{"n", n}, {"residual_mean_value", mv}, {"residual_inside", in},
                     {"residual_mean_value_fd", fd}});
    if (n >= finest_n) {
      finest_n = n;
      finest = mv;
      inside = in;
    }
  }

  Checks checks;
  checks.upper("boundary_residual", finest, tolerance(c, "boundary_residual", 1e-8));
  checks.upper("inside_curvature_error", std::abs(inside - 1.0),
               tolerance(c, "inside_curvature", 1e-8));

  json summary = base_summary("schottky-check", c);
  summary["residual_table"] = table;
  summary["finest_samples"] = finest_n;
  summary["boundary_residual"] = finest;
  summary["inside_residual"] = inside;
  write_summary(dir, summary, checks);
  log << "schottky-check: residual " << format_number(finest) << " at n=" << finest_n
      << ", one-sided " << format_number(inside) << '\n';
  return checks.pass() ? kExitOk : kExitToleranceFailure;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

int run_experiment(const std::string& command, ExperimentConfig config, const RunOptions& options,
                   std::ostream& log) {
  if (!config.kind.empty() && config.kind != command) {
    log << "config error: experiment.kind '" << config.kind << "' does not match command '"
        << command << "'\n";
    return kExitConfigError;
  }
  if (options.dt) {
    if (!(*options.dt > 0.0)) {
      log << "config error: --dt must be positive\n";
      return kExitConfigError;
    }
    config.integrator.dt = *options.dt;
  }
  if (options.seed) config.seed = *options.seed;

  const fs::path dir(options.out_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory " + dir.string());
    if (command == "simulate") return run_simulate(config, dir, log);
    if (command == "kimura") return run_kimura(config, dir, log);
    if (command == "geodesic") return run_geodesic(config, dir, log);
    if (command == "green-check") return run_green_check(config, dir, log);
    if (command == "schottky-check") return run_schottky_check(config, dir, log);
    log << "config error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const OutputError& e) {
    log << "output error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const CollisionError& e) {
    log << "numerical halt: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const StepFailure& e) {
    log << "numerical halt: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const VortexOnCycleError& e) {
    log << "numerical halt: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const ConvergenceError& e) {
    log << "numerical halt: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const SingularityError& e) {
    log << "numerical halt: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const Error& e) {
    // Remaining library errors come from invalid inputs (off-atlas points,
    // unknown scheme names and the like).
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int run(const std::string& command, const std::string& config_path, const RunOptions& options,
        std::ostream& log) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return run_experiment(command, std::move(config), options, log);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point vortex dynamics on closed surfaces"};
  app.require_subcommand(1);
  RunOptions options;
  std::string config_path;
  double dt = 0.0;
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Integrate a vortex configuration and report conserved quantities"},
      {"kimura", "Vortex pair sweep against the comparison geodesic"},
      {"geodesic", "Integrate a geodesic and report speed, residual and closure"},
      {"green-check", "Symmetry, mean-zero, Laplacian and h11 checks of the Green function"},
      {"schottky-check", "Boundary geodesic residuals of the doubled disk"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", options.out_dir, "Output directory");
    sub->add_option("--dt", dt, "Override integrator.dt");
    sub->add_option("--seed", seed, "Override the random seed");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--dt") > 0) options.dt = dt;
    if (sub->count("--seed") > 0) options.seed = seed;
    const int code = run(sub->get_name(), config_path, options, err);
    if (code == kExitOk) out << sub->get_name() << ": ok\n";
    if (code == kExitToleranceFailure) out << sub->get_name() << ": tolerance failure\n";
    return code;
  }
  return kExitConfigError;
}

}  // namespace surfvortex::cli
