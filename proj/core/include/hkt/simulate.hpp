#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hkt/bem.hpp"
#include "hkt/control.hpp"
#include "hkt/flow.hpp"
#include "hkt/sensor.hpp"

namespace hkt {

/// Sampled closed- or open-loop response. `energy` is the trapezoidal
/// integral of `power` over `t`.
struct Trajectory {
  std::vector<double> t;       // s
  std::vector<double> omega;   // rad/s
  std::vector<double> u;       // N m
  std::vector<double> torque;  // N m, fluid-induced
  std::vector<double> power;   // W
  std::vector<double> omega_sensed;  // feedback signal when a sensor is modelled
  double energy = 0.0;               // J
  std::vector<double> stall_times;   // instants where the omega >= 0 floor bound
  std::size_t clamped_queries = 0;   // open-loop lookups outside the schedule

  std::size_t size() const { return t.size(); }
  bool stalled() const { return !stall_times.empty(); }
};

double trapezoid(std::span<const double> t, std::span<const double> y);

struct SimulationSettings {
  double horizon = 60.0;  // s
  double dt = 0.01;       // s
  MaterialProperties material;
  std::optional<double> inertia;  // overrides the value computed from the geometry
  std::optional<SensorModel> sensor;
  std::optional<double> initial_omega;  // default: equilibrium of the law at t = 0
};

/// Speed at which Q(omega, v) equals the commanded torque, searching down
/// from a high tip speed ratio for the stable crossing. Returns 0 when the
/// command exceeds the fluid torque everywhere.
double equilibrium_speed(const RotorModel& rotor, const ControlLaw& law, double v, double t = 0.0);

/// Fixed-step RK4 integration of I domega/dt = Q(omega, v(t)) - u.
///
/// With a sensor the controller sees max(0, F[omega + n]) sampled at each
/// step and held over it; the physics always uses the true speed. The noise
/// level is set from a noise-free pilot run of the same configuration.
Trajectory simulate(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow,
                    const SimulationSettings& settings);

/// Energy and its exact derivative (discrete forward sensitivities through
/// the RK4 stages) with respect to [gain, chord_0..chord_{N-1},
/// twist_0..twist_{N-1}]. Noise-free only; the inertia follows the geometry.
struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
  Trajectory trajectory;
};

EnergyGradient simulate_with_gradient(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow,
                                      const SimulationSettings& settings);

}  // namespace hkt
