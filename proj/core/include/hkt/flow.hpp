#pragma once

#include <memory>
#include <string>
#include <variant>

namespace hkt {

/// v(t) = base + step / (1 + exp(-(t - center)))
struct SmoothedStep {
  double base = 1.2;
  double step = 0.2;
  double center = 30.0;
};

/// v(t) = amplitude * sin(frequency * t + phase) + mean
struct Sinusoid {
  double amplitude = 0.2;
  double frequency = 0.25;  // rad/s
  double phase = 0.0;       // rad
  double mean = 1.5;
};

class FlowProfile;

/// factor * inner(t)
struct ScaledFlow {
  std::shared_ptr<const FlowProfile> inner;
  double factor = 1.0;
};

/// Deterministic inflow speed as a function of time.
class FlowProfile {
 public:
  using Variant = std::variant<SmoothedStep, Sinusoid, ScaledFlow>;

  FlowProfile(SmoothedStep p) : profile_(p) {}        // NOLINT: implicit by design of the variant
  FlowProfile(Sinusoid p) : profile_(p) {}            // NOLINT
  FlowProfile(ScaledFlow p) : profile_(std::move(p)) {}  // NOLINT

  /// Smoothed step from 1.2 to 1.4 m/s centred at 30 s.
  static FlowProfile step_inflow() { return SmoothedStep{}; }
  /// 0.2 sin(0.25 t) + 1.5 m/s.
  static FlowProfile sinusoidal_inflow() { return Sinusoid{}; }
  static FlowProfile constant(double v) { return Sinusoid{0.0, 0.0, 0.0, v}; }
  static FlowProfile scaled(FlowProfile inner, double factor);

  double velocity(double t) const;

  /// Lower bound of v(t) over [0, horizon].
  double min_velocity(double horizon) const;

  /// Throws ConfigError unless v(t) > 0 over [0, horizon].
  void validate(double horizon) const;

  const Variant& variant() const { return profile_; }

  /// Compact human/machine readable description, e.g. "sinusoid(A=0.2,w=0.25,psi=0,mean=1.5)".
  std::string describe() const;

 private:
  Variant profile_;
};

}  // namespace hkt
