#include "hkt/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

FlowProfile FlowProfile::scaled(FlowProfile inner, double factor) {
  return ScaledFlow{std::make_shared<const FlowProfile>(std::move(inner)), factor};
}

double FlowProfile::velocity(double t) const {
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SmoothedStep>) {
          return p.base + p.step / (1.0 + std::exp(-(t - p.center)));
        } else if constexpr (std::is_same_v<P, Sinusoid>) {
          return p.amplitude * std::sin(p.frequency * t + p.phase) + p.mean;
        } else {
          return p.factor * p.inner->velocity(t);
        }
      },
      profile_);
}

double FlowProfile::min_velocity(double horizon) const {
  return std::visit(
      [horizon](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SmoothedStep>) {
          return p.base + std::min(0.0, p.step);
        } else if constexpr (std::is_same_v<P, Sinusoid>) {
          return p.mean - std::abs(p.amplitude);
        } else {
          const double m = p.inner->min_velocity(horizon);
          return p.factor >= 0.0 ? p.factor * m : -std::numeric_limits<double>::infinity();
        }
      },
      profile_);
}

void FlowProfile::validate(double horizon) const {
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (const auto* s = std::get_if<ScaledFlow>(&profile_); s && !s->inner) throw ConfigError("scaled flow without inner profile");
  if (!(min_velocity(horizon) > 0.0)) throw ConfigError("inflow speed must stay positive: " + describe());
}

std::string FlowProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SmoothedStep>) {
          os << "step(base=" << p.base << ",step=" << p.step << ",center=" << p.center << ")";
        } else if constexpr (std::is_same_v<P, Sinusoid>) {
          os << "sinusoid(A=" << p.amplitude << ",w=" << p.frequency << ",psi=" << p.phase << ",mean=" << p.mean << ")";
        } else {
          os << "scaled(" << p.factor << "," << (p.inner ? p.inner->describe() : "null") << ")";
        }
      },
      profile_);
  return os.str();
}

}  // namespace hkt
