#include "hkt/control.hpp"

#include <algorithm>
#include <cmath>

#include "hkt/error.hpp"

namespace hkt {

double smoothed_sat(double u, double gamma, double nu) {
  const double x = 2.0 * u / gamma;
  return 0.25 * gamma * (2.0 + std::sqrt(nu + x * x) - std::sqrt(nu + (x - 2.0) * (x - 2.0)));
}

double smoothed_sat_derivative(double u, double gamma, double nu) {
  const double x = 2.0 * u / gamma;
  // d/du = (gamma/4) * (2/gamma) * (x / sqrt(nu + x^2) - (x - 2) / sqrt(nu + (x - 2)^2))
  return 0.5 * (x / std::sqrt(nu + x * x) - (x - 2.0) / std::sqrt(nu + (x - 2.0) * (x - 2.0)));
}

double hard_sat(double u, double gamma) { return std::clamp(u, -gamma, gamma); }

double ControlLaw::gain() const {
  if (const auto* l = std::get_if<LinearFeedback>(&law)) return l->gain;
  if (const auto* q = std::get_if<QuadraticFeedback>(&law)) return q->gain;
  return 0.0;
}

void ControlLaw::validate() const {
  if (is_feedback() && !(gain() >= 0.0)) throw DomainError("feedback gain must be >= 0");
  if (saturation && !(saturation->u_max > 0.0)) throw DomainError("saturation limit must be positive");
  if (saturation && !(saturation->nu > 0.0)) throw DomainError("saturation smoothing must be positive");
  if (const auto* s = std::get_if<OpenLoopSchedule>(&law)) {
    if (s->t.empty() || s->t.size() != s->u.size()) throw DomainError("open-loop schedule needs matching t/u samples");
    for (std::size_t i = 1; i < s->t.size(); ++i)
      if (!(s->t[i] > s->t[i - 1])) throw DomainError("open-loop schedule times must increase");
    if (s->rule == OpenLoopSchedule::Interpolation::Collocation && s->t.size() % 2 == 0)
      throw DomainError("collocation schedule needs an odd node count");
  }
}

namespace {

ControlOutput schedule_value(const OpenLoopSchedule& s, double t) {
  ControlOutput out;
  const auto& ts = s.t;
  if (t <= ts.front() || t >= ts.back()) {
    out.clamped = t < ts.front() || t > ts.back();
    out.u = t <= ts.front() ? s.u.front() : s.u.back();
    return out;
  }
  if (s.rule == OpenLoopSchedule::Interpolation::Linear) {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    out.u = s.u[j - 1] + w * (s.u[j] - s.u[j - 1]);
    return out;
  }
  // Segment k spans nodes 2k, 2k+1, 2k+2.
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t j = static_cast<std::size_t>(it - ts.begin()) - 1;
  const std::size_t i0 = std::min(j - j % 2, ts.size() - 3);
  const double t0 = ts[i0], t1 = ts[i0 + 1], t2 = ts[i0 + 2];
  const double l0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2));
  const double l1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2));
  const double l2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
  // The quadratic is limited to the range of its three nodes so that bounds
  // honoured at the nodes hold everywhere.
  const auto [lo, hi] = std::minmax({s.u[i0], s.u[i0 + 1], s.u[i0 + 2]});
  out.u = std::clamp(l0 * s.u[i0] + l1 * s.u[i0 + 1] + l2 * s.u[i0 + 2], lo, hi);
  return out;
}

}  // namespace

ControlOutput control_torque(const ControlLaw& law, double omega, double t) {
  ControlOutput out;
  if (const auto* s = std::get_if<OpenLoopSchedule>(&law.law)) {
    out = schedule_value(*s, t);
  } else if (const auto* l = std::get_if<LinearFeedback>(&law.law)) {
    out.u = l->gain * omega;
    out.du_domega = l->gain;
    out.du_dgain = omega;
  } else {
    const auto& q = std::get<QuadraticFeedback>(law.law);
    out.u = q.gain * omega * omega;
    out.du_domega = 2.0 * q.gain * omega;
    out.du_dgain = omega * omega;
  }
  if (law.saturation) {
    const double slope = smoothed_sat_derivative(out.u, law.saturation->u_max, law.saturation->nu);
    out.u = smoothed_sat(out.u, law.saturation->u_max, law.saturation->nu);
    out.du_domega *= slope;
    out.du_dgain *= slope;
  }
  return out;
}

double tsr(double omega, double radius, double v) {
  if (!(v > 0.0)) throw DomainError("inflow speed must be positive");
  return omega * radius / v;
}

}  // namespace hkt
