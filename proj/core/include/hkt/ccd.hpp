#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkt/bem.hpp"
#include "hkt/control.hpp"
#include "hkt/flow.hpp"
#include "hkt/geometry.hpp"
#include "hkt/nlp.hpp"
#include "hkt/oloc.hpp"
#include "hkt/simulate.hpp"

namespace hkt {

enum class ControlMode { Oloc, LinearFeedback, QuadraticFeedback };

std::string to_string(ControlMode mode);
/// Accepts "oloc", "linear", "quadratic"; throws ConfigError otherwise.
ControlMode parse_control_mode(const std::string& name);

/// Solver defaults of the design problems: 1e-6 feasibility, 1e-5 optimality.
nlp::Options ccd_solver_options();

struct CcdSpec {
  ControlMode mode = ControlMode::Oloc;
  FlowProfile flow = FlowProfile::sinusoidal_inflow();
  double horizon = 50.0;           // s
  double dt = 0.01;                // s, simulation and trajectory sampling
  std::optional<double> u_max;     // N m
  double nu = 0.001;               // smoothed saturation parameter
  GeometryBounds bounds;
  BladeGeometry initial_geometry = baseline_geometry();
  bool freeze_geometry = false;    // control-only design
  MaterialProperties material;
  int segments = 50;               // collocation segments (OLOC)
  double control_smoothing = 0.1;  // see TranscriptionOptions
  std::optional<double> initial_gain;                 // default: analytic K* law
  std::optional<std::pair<double, double>> gain_bounds;  // default [0, 500] linear, [0, 50] quadratic
  nlp::GradientMode gradient_mode = nlp::GradientMode::Analytic;
  nlp::Options solver = ccd_solver_options();
  std::uint64_t seed = 0;

  std::pair<double, double> gain_range() const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Analytic K omega^2 gain 0.5 rho pi R^5 Cp* / lambda*^3 from a Cp curve.
double optimal_quadratic_gain(const BladeGeometry& geometry, const FluidEnvironment& fluid, const CpCurve& cp);

/// Default starting gain of a feedback design: K* for the quadratic law and
/// K* omega_nominal for the linear one, with omega_nominal = lambda* v_mean / R.
double initial_gain(ControlMode mode, const RotorModel& rotor, const FlowProfile& flow, double horizon);

/// Time average of the inflow speed over [0, horizon] (Simpson, 1000 panels).
double mean_velocity(const FlowProfile& flow, double horizon);

struct CcdResult {
  ControlMode mode = ControlMode::Oloc;
  BladeGeometry geometry;
  std::optional<double> gain;               // feedback designs
  std::optional<OpenLoopSchedule> schedule;  // OLOC designs
  double initial_omega = 0.0;
  double energy = 0.0;              // of `trajectory`
  double collocation_energy = 0.0;  // OLOC quadrature objective
  Trajectory trajectory;
  CpCurve cp;
  nlp::Status status = nlp::Status::IterationLimit;
  int iterations = 0;
  double max_violation = 0.0;
  double optimality = 0.0;
  std::uint64_t seed = 0;

  bool converged() const { return status == nlp::Status::Converged; }
  /// Control law that reproduces the design in `simulate`.
  ControlLaw control_law(std::optional<double> u_max, double nu) const;
};

/// TSR grid used for the Cp curve of every design.
std::vector<double> report_tsr_grid();

CcdResult ccd_oloc(const CcdSpec& spec, const RotorModel& rotor);
CcdResult ccd_feedback(const CcdSpec& spec, const RotorModel& rotor);
/// Dispatches on spec.mode.
CcdResult run_ccd(const CcdSpec& spec, const RotorModel& rotor);

struct ComparisonRow {
  std::string label;
  ControlMode mode = ControlMode::Oloc;
  std::optional<CcdResult> result;
  std::string error;      // non-empty when the run failed
  double delta = 0.0;     // (E - E_OLOC) / E_OLOC
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // OLOC first, then quadratic, linear, optional baseline OLOC
  double reference_energy = 0.0;
  bool complete() const;
};

/// Runs all three designs on the spec's flow, horizon and u_max. With
/// `include_baseline` a control-only OLOC on the initial geometry is appended.
Comparison compare_controllers(const CcdSpec& spec, const RotorModel& rotor, bool include_baseline = false);

/// Percent delta in the "(-0.601%)" style, three decimals.
std::string format_delta(double delta);

}  // namespace hkt
