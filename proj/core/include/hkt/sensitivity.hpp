#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkt/ccd.hpp"
#include "hkt/flow.hpp"
#include "hkt/sensor.hpp"
#include "hkt/simulate.hpp"

namespace hkt {

/// Inflow perturbations of the sinusoidal profile: A scales the whole
/// profile by 1.1, B sets the frequency to 0.225 rad/s, C advances the phase
/// by 0.2 pi. `None` returns the base profile.
enum class UncertaintyKind { None, A, B, C };

std::string to_string(UncertaintyKind kind);
UncertaintyKind parse_uncertainty(const std::string& name);

/// Throws ConfigError unless `base` is a sinusoid.
FlowProfile perturb_flow(const FlowProfile& base, UncertaintyKind kind);

struct EvaluationSettings {
  double horizon = 50.0;
  double dt = 0.01;
  std::optional<double> u_max;
  double nu = 0.001;
  MaterialProperties material;
  std::optional<SensorModel> sensor;  // feedback designs only
};

struct DesignEvaluation {
  double energy = 0.0;
  bool stalled = false;  // the omega >= 0 floor bound: counted as non-generating
  Trajectory trajectory;
};

/// Simulates a finished design on `flow`. Open-loop designs replay their
/// stored schedule from their stored initial speed with no feedback
/// correction; feedback designs start at equilibrium and see the sensor.
DesignEvaluation evaluate_design(const RotorModel& rotor, const CcdResult& design, const FlowProfile& flow,
                                 const EvaluationSettings& settings);

/// Control-only OLOC on the fixed geometry with exact knowledge of `flow`.
CcdResult redesigned_oloc_ceiling(const RotorModel& rotor, const BladeGeometry& geometry, const FlowProfile& flow,
                                  const CcdSpec& base);

struct SensitivityCell {
  std::string controller;
  UncertaintyKind kind = UncertaintyKind::None;
  std::vector<double> seed_energies;  // one entry for noise-free or open-loop cells
  std::vector<bool> seed_stalled;
  double energy = 0.0;  // mean over seeds
  bool stalled = false;  // any seed stalled
  double ratio = 0.0;   // energy / ceiling
  std::string error;
};

struct SensitivityReport {
  std::vector<UncertaintyKind> kinds;
  std::vector<double> ceilings;    // per kind
  std::vector<std::string> ceiling_status;
  std::vector<SensitivityCell> cells;  // controllers x kinds, row-major
  std::vector<std::uint64_t> seeds;
  EvaluationSettings settings;

  const SensitivityCell& cell(const std::string& controller, UncertaintyKind kind) const;
};

struct SensitivityDesigns {
  CcdResult oloc;
  CcdResult quadratic;
  CcdResult linear;
};

/// Table of every design under every perturbation, feedback cells averaged
/// over `seeds`. `base` supplies the flow, horizon, u_max and solver settings
/// of the ceiling problems.
SensitivityReport sensitivity_table(const RotorModel& rotor, const SensitivityDesigns& designs, const CcdSpec& base,
                                    const std::vector<UncertaintyKind>& kinds, const std::vector<std::uint64_t>& seeds,
                                    const std::optional<SensorModel>& sensor);

}  // namespace hkt
