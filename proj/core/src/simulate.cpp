#include "hkt/simulate.hpp"

#include <cmath>
#include <string>

#include "hkt/error.hpp"
#include "roots.hpp"

namespace hkt {

double trapezoid(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw DomainError("trapezoid needs equal-length series");
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) sum += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

double equilibrium_speed(const RotorModel& rotor, const ControlLaw& law, double v, double t) {
  const double radius = rotor.geometry().tip_radius;
  auto excess = [&](double omega) { return rotor.torque(v, omega) - control_torque(law, omega, t).u; };
  constexpr double kTop = 30.0, kBottom = 0.05, kStep = 0.25;
  double hi = kTop * v / radius;
  double g_hi = excess(hi);
  if (g_hi >= 0.0) throw SolverFailure("no equilibrium below TSR 30: commanded torque too small");
  for (double tsr_lo = kTop - kStep; tsr_lo >= kBottom - 1e-12; tsr_lo -= kStep) {
    const double lo = std::max(tsr_lo, kBottom) * v / radius;
    double g_lo;
    try {
      g_lo = excess(lo);
    } catch (const SolverFailure&) {
      continue;
    }
    if (g_lo >= 0.0) return detail::brent(excess, lo, hi, g_lo, g_hi, 1e-13, 200);
    hi = lo;
    g_hi = g_lo;
  }
  return 0.0;
}

namespace {

struct Setup {
  std::size_t steps = 0;
  double inertia = 0.0;
  std::vector<double> dinertia;  // dI/dchord_i
};

Setup prepare(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow, const SimulationSettings& s) {
  if (!(s.dt > 0.0)) throw ConfigError("time step must be positive");
  flow.validate(s.horizon);
  law.validate();
  Setup out;
  const double n = std::round(s.horizon / s.dt);
  if (n < 1.0 || std::abs(n * s.dt - s.horizon) > 1e-9 * s.horizon)
    throw ConfigError("horizon must be a positive multiple of dt");
  out.steps = static_cast<std::size_t>(n);
  if (s.inertia) {
    out.inertia = *s.inertia;
  } else {
    out.inertia = rotor_inertia(rotor.geometry(), s.material);
    out.dinertia = rotor_inertia_chord_gradient(rotor.geometry(), s.material);
  }
  if (!(out.inertia > 0.0)) throw ConfigError("rotor inertia must be positive");
  if (s.initial_omega && !(*s.initial_omega >= 0.0)) throw ConfigError("initial speed must be >= 0");
  return out;
}

// Right-hand side of the rotor ODE at one RK4 stage, optionally with the
// partial derivatives needed by the forward sensitivities.
struct Stage {
  double q = 0.0, u = 0.0, f = 0.0;
  double q_omega = 0.0, f_omega = 0.0;
  std::vector<double> q_p, f_p;
  bool clamped = false;
};

class Rhs {
 public:
  Rhs(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow, const Setup& setup, bool gradient)
      : rotor_(rotor), law_(law), flow_(flow), setup_(setup), gradient_(gradient),
        n_(rotor.geometry().size()) {}

  std::size_t params() const { return 1 + 2 * n_; }

  void operator()(double t, double omega, const double* held_u, Stage& st) {
    const bool floored = omega < 0.0;
    const double w = floored ? 0.0 : omega;
    const double v = flow_.velocity(t);
    if (gradient_) {
      rotor_.torque_gradient(v, w, tg_);
      st.q = tg_.torque;
      st.q_omega = floored ? 0.0 : tg_.dq_domega;
    } else {
      st.q = rotor_.torque(v, w);
    }
    ControlOutput c;
    if (held_u) {
      c.u = *held_u;
    } else {
      c = control_torque(law_, w, t);
    }
    st.u = c.u;
    st.clamped = c.clamped;
    const double inertia = setup_.inertia;
    st.f = (st.q - st.u) / inertia;
    if (!gradient_) return;
    const double du_domega = floored ? 0.0 : c.du_domega;
    st.f_omega = (st.q_omega - du_domega) / inertia;
    st.q_p.assign(params(), 0.0);
    st.f_p.assign(params(), 0.0);
    st.f_p[0] = -c.du_dgain / inertia;
    for (std::size_t i = 0; i < n_; ++i) {
      st.q_p[1 + i] = tg_.dq_dchord[i];
      st.q_p[1 + n_ + i] = tg_.dq_dtwist_deg[i];
      st.f_p[1 + i] = tg_.dq_dchord[i] / inertia - (st.q - st.u) * setup_.dinertia[i] / (inertia * inertia);
      st.f_p[1 + n_ + i] = tg_.dq_dtwist_deg[i] / inertia;
    }
  }

 private:
  const RotorModel& rotor_;
  const ControlLaw& law_;
  const FlowProfile& flow_;
  const Setup& setup_;
  bool gradient_;
  std::size_t n_;
  TorqueGradient tg_;
};

struct Run {
  Trajectory traj;
  std::vector<double> grad;
};

Run integrate(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow, const SimulationSettings& s,
              const Setup& setup, bool gradient, SensorChain* sensor, double omega0) {
  Rhs rhs(rotor, law, flow, setup, gradient);
  const std::size_t np = rhs.params();
  const std::size_t steps = setup.steps;
  const double h = s.dt;

  Run run;
  Trajectory& tr = run.traj;
  tr.t.resize(steps + 1);
  tr.omega.resize(steps + 1);
  tr.u.resize(steps + 1);
  tr.torque.resize(steps + 1);
  tr.power.resize(steps + 1);
  if (sensor) tr.omega_sensed.resize(steps + 1);

  std::vector<double> sens(gradient ? np : 0, 0.0), dpower_prev, dpower;
  std::vector<double> s2(sens.size()), s3(sens.size()), s4(sens.size()), tmp(sens.size());
  if (gradient) {
    run.grad.assign(np, 0.0);
    // Equilibrium start: d(omega0)/dp = -(dQ/dp - du/dp) / (dQ/domega - du/domega).
    if (!s.initial_omega && omega0 > 0.0) {
      Stage st;
      rhs(0.0, omega0, nullptr, st);
      if (st.f_omega != 0.0)
        for (std::size_t j = 0; j < np; ++j) {
          // f_p carries an inertia-derivative term that vanishes at equilibrium (q == u).
          const double g_p = (j == 0 ? st.f_p[0] : st.q_p[j] / setup.inertia);
          sens[j] = -g_p / st.f_omega;
        }
    }
  }

  double omega = omega0;
  Stage k1, k2, k3, k4;
  double held = 0.0;
  auto record_point = [&](std::size_t i, const Stage& st) {
    tr.omega[i] = omega;
    tr.u[i] = st.u;
    tr.torque[i] = st.q;
    tr.power[i] = st.q * omega;
    if (st.clamped) ++tr.clamped_queries;
    if (gradient) {
      dpower.resize(np);
      const double dp_domega = st.q_omega * omega + st.q;
      for (std::size_t j = 0; j < np; ++j) dpower[j] = dp_domega * sens[j] + st.q_p[j] * omega;
      if (i > 0)
        for (std::size_t j = 0; j < np; ++j) run.grad[j] += 0.5 * (tr.t[i] - tr.t[i - 1]) * (dpower[j] + dpower_prev[j]);
      dpower_prev.swap(dpower);
    }
  };

  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * h;
    tr.t[i] = t;
    const double* hold = nullptr;
    if (sensor) {
      const double y = sensor->measure(omega);
      tr.omega_sensed[i] = y;
      held = control_torque(law, y, t).u;
      hold = &held;
    }
    rhs(t, omega, hold, k1);
    record_point(i, k1);
    if (i == steps) break;

    rhs(t + 0.5 * h, omega + 0.5 * h * k1.f, hold, k2);
    rhs(t + 0.5 * h, omega + 0.5 * h * k2.f, hold, k3);
    rhs(t + h, omega + h * k3.f, hold, k4);
    double next = omega + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
    if (!std::isfinite(next)) throw IntegrationFailure("non-finite rotor speed at t=" + std::to_string(t + h), t + h);

    if (gradient) {
      for (std::size_t j = 0; j < np; ++j) {
        const double d1 = k1.f_omega * sens[j] + k1.f_p[j];
        const double d2 = k2.f_omega * (sens[j] + 0.5 * h * d1) + k2.f_p[j];
        const double d3 = k3.f_omega * (sens[j] + 0.5 * h * d2) + k3.f_p[j];
        const double d4 = k4.f_omega * (sens[j] + h * d3) + k4.f_p[j];
        sens[j] += h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
      }
    }
    if (next < 0.0) {
      next = 0.0;
      tr.stall_times.push_back(t + h);
      std::fill(sens.begin(), sens.end(), 0.0);
    }
    omega = next;
  }
  tr.energy = trapezoid(tr.t, tr.power);
  return run;
}

double initial_speed(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow,
                     const SimulationSettings& s) {
  return s.initial_omega ? *s.initial_omega : equilibrium_speed(rotor, law, flow.velocity(0.0), 0.0);
}

}  // namespace

Trajectory simulate(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow,
                    const SimulationSettings& settings) {
  const Setup setup = prepare(rotor, law, flow, settings);
  const double omega0 = initial_speed(rotor, law, flow, settings);
  if (!settings.sensor) return integrate(rotor, law, flow, settings, setup, false, nullptr, omega0).traj;

  settings.sensor->validate(settings.dt);
  const Trajectory pilot = integrate(rotor, law, flow, settings, setup, false, nullptr, omega0).traj;
  SensorChain chain(*settings.sensor, settings.dt, noise_sigma(pilot.omega, settings.sensor->snr_db), omega0);
  return integrate(rotor, law, flow, settings, setup, false, &chain, omega0).traj;
}

EnergyGradient simulate_with_gradient(const RotorModel& rotor, const ControlLaw& law, const FlowProfile& flow,
                                      const SimulationSettings& settings) {
  if (settings.sensor) throw ConfigError("energy gradients are only available without sensor noise");
  if (settings.inertia) throw ConfigError("energy gradients need the inertia to follow the geometry");
  const Setup setup = prepare(rotor, law, flow, settings);
  const double omega0 = initial_speed(rotor, law, flow, settings);
  Run run = integrate(rotor, law, flow, settings, setup, true, nullptr, omega0);
  EnergyGradient out;
  out.energy = run.traj.energy;
  out.gradient = std::move(run.grad);
  out.trajectory = std::move(run.traj);
  return out;
}

}  // namespace hkt
