#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "surfvortex/homology.hpp"
#include "surfvortex/surface.hpp"

namespace surfvortex::cli {

/// Malformed or schema-invalid experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

struct SurfaceSpec {
  std::string kind = "sphere";  // sphere | torus | disk-double
  Complex tau{0.0, 1.0};
};

struct IntegratorSpec {
  std::string scheme = "rk4";
  double dt = 1e-3;
  double T = 1.0;
  int stride = 1;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  SurfaceSpec surface;
  std::vector<PointVortex> vortices;
  std::vector<double> a;
  std::vector<double> b;
  IntegratorSpec integrator;
  std::string kind;           // experiment.kind, may be empty
  nlohmann::json experiment;  // kind-specific parameters
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
};

int surface_genus(const SurfaceSpec& s);
std::shared_ptr<const Surface> make_surface(const SurfaceSpec& s);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace surfvortex::cli
