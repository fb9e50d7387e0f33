#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace hkt {

/// (gamma/4) * (2 + sqrt(nu + (2u/gamma)^2) - sqrt(nu + (2u/gamma - 2)^2))
double smoothed_sat(double u, double gamma, double nu);
double smoothed_sat_derivative(double u, double gamma, double nu);

/// Hard clamp to [-gamma, gamma].
double hard_sat(double u, double gamma);

struct Saturation {
  double u_max = 700.0;  // N m
  double nu = 0.001;
};

/// Sampled open-loop torque schedule.
struct OpenLoopSchedule {
  enum class Interpolation {
    Linear,       // piecewise linear over an arbitrary table
    Collocation,  // 2N+1 Lobatto nodes, quadratic through (start, mid, end) of each segment,
                  // limited to the range of those three values
  };
  std::vector<double> t;
  std::vector<double> u;
  Interpolation rule = Interpolation::Linear;
};

struct LinearFeedback {
  double gain = 0.0;  // N m / (rad/s)
};

struct QuadraticFeedback {
  double gain = 0.0;  // N m / (rad/s)^2
};

struct ControlLaw {
  std::variant<OpenLoopSchedule, LinearFeedback, QuadraticFeedback> law;
  std::optional<Saturation> saturation;

  bool is_feedback() const { return !std::holds_alternative<OpenLoopSchedule>(law); }
  /// Feedback gain, 0 for open loop.
  double gain() const;
  /// Throws DomainError on negative gains, bad saturation or malformed schedules.
  void validate() const;
};

struct ControlOutput {
  double u = 0.0;
  double du_domega = 0.0;
  double du_dgain = 0.0;
  bool clamped = false;  // open-loop query fell outside the schedule
};

/// Torque command for the sensed speed at time t. Saturation is applied last.
ControlOutput control_torque(const ControlLaw& law, double omega_feedback, double t);

/// Tip speed ratio omega R / v.
double tsr(double omega, double radius, double v);

}  // namespace hkt
