#include "surfvortex_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace surfvortex::cli {
namespace {

using nlohmann::json;

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
  return v;
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

}  // namespace

int surface_genus(const SurfaceSpec& s) { return s.kind == "torus" ? 1 : 0; }

std::shared_ptr<const Surface> make_surface(const SurfaceSpec& s) {
  if (s.kind == "sphere") return std::make_shared<Sphere>();
  if (s.kind == "torus") return std::make_shared<FlatTorus>(s.tau);
  if (s.kind == "disk-double") return std::make_shared<DiskDouble>();
  throw ConfigError("surface.kind: unknown surface '" + s.kind + "'");
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"schema_version", "surface", "vortices", "circulations", "integrator",
                  "experiment", "tolerances", "seed"},
                 "config");
  ExperimentConfig c;
  if (!j.contains("schema_version")) throw ConfigError("schema_version: missing");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion) {
    throw ConfigError("schema_version: expected " + std::to_string(kSchemaVersion));
  }

  if (!j.contains("surface") || !j["surface"].is_object()) {
    throw ConfigError("surface: missing or not an object");
  }
  const json& s = j["surface"];
  reject_unknown(s, {"kind", "tau"}, "surface");
  if (!s.contains("kind") || !s["kind"].is_string()) throw ConfigError("surface.kind: missing");
  c.surface.kind = s["kind"].get<std::string>();
  if (c.surface.kind != "sphere" && c.surface.kind != "torus" && c.surface.kind != "disk-double") {
    throw ConfigError("surface.kind: expected sphere, torus or disk-double");
  }
  if (s.contains("tau")) {
    const auto tau = number_list(s["tau"], "surface.tau");
    if (tau.size() != 2) throw ConfigError("surface.tau: expected [re, im]");
    if (!(tau[1] > 0.0)) throw ConfigError("surface.tau: imaginary part must be positive");
    c.surface.tau = Complex(tau[0], tau[1]);
  }
  const int g = surface_genus(c.surface);

  if (j.contains("vortices")) {
    const json& vs = j["vortices"];
    if (!vs.is_array()) throw ConfigError("vortices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string where = "vortices[" + std::to_string(i) + "]";
      const auto v = number_list(vs[i], where);
      if (v.size() != 3 && v.size() != 4) throw ConfigError(where + ": expected [x, y, strength(, chart)]");
      const int chart = v.size() == 4 ? static_cast<int>(v[3]) : 0;
      if (v.size() == 4 && (v[3] != chart || chart < 0 || chart > 1)) {
        throw ConfigError(where + ": chart must be 0 or 1");
      }
      if (chart == 1 && g == 1) throw ConfigError(where + ": the torus has a single chart");
      c.vortices.push_back(PointVortex{ChartPoint{chart, Complex(v[0], v[1])}, v[2]});
    }
  }

  c.a.assign(g, 0.0);
  c.b.assign(g, 0.0);
  if (j.contains("circulations")) {
    const json& circ = j["circulations"];
    if (!circ.is_object()) throw ConfigError("circulations: expected an object");
    reject_unknown(circ, {"a", "b"}, "circulations");
    if (circ.contains("a")) c.a = number_list(circ["a"], "circulations.a");
    if (circ.contains("b")) c.b = number_list(circ["b"], "circulations.b");
    if (static_cast<int>(c.a.size()) != g) {
      throw ConfigError("circulations.a: length " + std::to_string(c.a.size()) +
                        " does not match surface genus " + std::to_string(g));
    }
    if (static_cast<int>(c.b.size()) != g) {
      throw ConfigError("circulations.b: length " + std::to_string(c.b.size()) +
                        " does not match surface genus " + std::to_string(g));
    }
  }

  if (j.contains("integrator")) {
    const json& in = j["integrator"];
    if (!in.is_object()) throw ConfigError("integrator: expected an object");
    reject_unknown(in, {"scheme", "dt", "T", "stride"}, "integrator");
    if (in.contains("scheme")) {
      if (!in["scheme"].is_string()) throw ConfigError("integrator.scheme: expected a string");
      c.integrator.scheme = in["scheme"].get<std::string>();
      if (c.integrator.scheme != "rk4" && c.integrator.scheme != "midpoint") {
        throw ConfigError("integrator.scheme: expected rk4 or midpoint");
      }
    }
    if (in.contains("dt")) c.integrator.dt = number(in["dt"], "integrator.dt");
    if (in.contains("T")) c.integrator.T = number(in["T"], "integrator.T");
    if (in.contains("stride")) {
      if (!in["stride"].is_number_integer()) throw ConfigError("integrator.stride: expected an integer");
      c.integrator.stride = in["stride"].get<int>();
    }
    if (!(c.integrator.dt > 0.0)) throw ConfigError("integrator.dt: must be positive");
    if (!(c.integrator.T >= 0.0)) throw ConfigError("integrator.T: must be nonnegative");
    if (c.integrator.stride < 1) throw ConfigError("integrator.stride: must be at least 1");
  }

  if (j.contains("experiment")) {
    const json& e = j["experiment"];
    if (!e.is_object()) throw ConfigError("experiment: expected an object");
    c.experiment = e;
    if (e.contains("kind")) {
      if (!e["kind"].is_string()) throw ConfigError("experiment.kind: expected a string");
      c.kind = e["kind"].get<std::string>();
    }
  } else {
    c.experiment = json::object();
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances: expected an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const double v = number(it.value(), "tolerances." + it.key());
      if (!(v >= 0.0)) throw ConfigError("tolerances." + it.key() + ": must be nonnegative");
      c.tolerances[it.key()] = v;
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace surfvortex::cli
