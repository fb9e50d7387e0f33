#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkt/ccd.hpp"
#include "hkt/polar.hpp"
#include "hkt/sensitivity.hpp"

namespace hkt::cli {

using Json = nlohmann::json;

/// Command-line values that override the config file.
struct Overrides {
  std::optional<int> scenario;
  std::optional<double> u_max;
  bool no_constraint = false;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<double> dt;
  std::optional<int> segments;
  std::optional<std::string> law;
  std::optional<double> gain;
  std::vector<std::string> controllers;
};

struct SimulateSection {
  std::string law = "quadratic";      // quadratic | linear
  std::optional<double> gain;          // default: analytic K* law
  std::optional<double> initial_omega;
  bool sensor = false;
};

struct CampaignConfig {
  std::string campaign = "hkt";
  int scenario = 2;
  std::string geometry = "baseline";
  std::string polar = "default";
  AirfoilPolar::Interpolation polar_interpolation = AirfoilPolar::Interpolation::MonotoneCubic;
  FlowProfile flow = FlowProfile::sinusoidal_inflow();
  double horizon = 50.0;
  double dt = 0.01;
  std::optional<double> u_max;
  double nu = 0.001;
  std::vector<ControlMode> controllers;
  bool include_baseline = true;
  nlp::Options solver = ccd_solver_options();
  bool solver_log = false;
  int segments = 50;
  double control_smoothing = 0.1;
  FluidEnvironment fluid;
  MaterialProperties material;
  SensorModel sensor;
  std::vector<std::uint64_t> seeds;
  std::vector<UncertaintyKind> uncertainty;
  std::filesystem::path output_dir;
  SimulateSection simulate;
  double tsr_min = 1.0, tsr_max = 12.0;
  int tsr_points = 45;
  std::uint64_t seed = 0;

  Json effective;    // merged configuration as applied
  std::string hash;  // 16 hex digits over `effective` minus output_dir

  /// Artifact prefix: <campaign>_s<scenario>[_u<u_max>].
  std::string tag() const;
  RotorModel rotor() const;
  CcdSpec ccd_spec(ControlMode mode) const;
};

/// Defaults for a scenario: 1 is the smoothed step (60 s, no torque limit),
/// 2 the sinusoid (50 s).
Json scenario_defaults(int scenario);

/// Merges `file` (may be null) and the overrides over the scenario defaults,
/// rejects unknown keys and ill-typed values, and resolves every field.
/// Throws ConfigError.
CampaignConfig load_config(const Json& file, const Overrides& overrides, const std::filesystem::path& base_dir = {});

Json read_json_file(const std::filesystem::path& path);

/// FNV-1a 64 of the compact dump, as 16 lowercase hex digits.
std::string hash_json(const Json& j);

/// Root for relative output directories: $HKTCCD_OUTPUT_ROOT or the working directory.
std::filesystem::path output_root();

}  // namespace hkt::cli
