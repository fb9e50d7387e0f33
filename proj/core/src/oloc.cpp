#include "hkt/oloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hkt/error.hpp"

namespace hkt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CollocationGrid CollocationGrid::uniform(double horizon, int segments) {
  if (!(horizon > 0.0) || segments < 1) throw ConfigError("collocation grid needs T > 0 and at least one segment");
  CollocationGrid g;
  g.boundaries.resize(static_cast<std::size_t>(segments) + 1);
  for (int k = 0; k <= segments; ++k) g.boundaries[static_cast<std::size_t>(k)] = horizon * k / segments;
  return g;
}

std::vector<double> CollocationGrid::node_times() const {
  std::vector<double> t(node_count());
  for (std::size_t k = 0; k < segments(); ++k) {
    t[2 * k] = boundaries[k];
    t[2 * k + 1] = 0.5 * (boundaries[k] + boundaries[k + 1]);
  }
  t.back() = boundaries.back();
  return t;
}

void CollocationGrid::validate() const {
  if (boundaries.size() < 2) throw ConfigError("collocation grid needs at least one segment");
  for (std::size_t k = 1; k < boundaries.size(); ++k)
    if (!(boundaries[k] > boundaries[k - 1])) throw ConfigError("collocation boundaries must ascend");
}

void collocation_defects(const CollocationGrid& grid, std::span<const double> x, std::span<const double> f,
                         std::span<double> out) {
  const std::size_t n = grid.segments();
  if (x.size() != grid.node_count() || f.size() != grid.node_count() || out.size() != 2 * n)
    throw DomainError("collocation defect inputs do not match the grid");
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = 2 * k, m = i + 1, j = i + 2;
    const double h = grid.boundaries[k + 1] - grid.boundaries[k];
    out[2 * k] = x[j] - x[i] - h / 6.0 * (f[i] + 4.0 * f[m] + f[j]);
    out[2 * k + 1] = x[m] - 0.5 * (x[i] + x[j]) - h / 8.0 * (f[i] - f[j]);
  }
}

TranscribedProblem::TranscribedProblem(RotorModel rotor, FlowProfile flow, double horizon,
                                       TranscriptionOptions options)
    : rotor_(std::move(rotor)), flow_(std::move(flow)), horizon_(horizon), options_(options) {
  flow_.validate(horizon_);
  grid_ = CollocationGrid::uniform(horizon_, options_.segments);
  if (options_.u_max && !(*options_.u_max > 0.0)) throw ConfigError("u_max must be positive");
  if (!(options_.omega_scale > 0.0) || !(options_.chord_scale > 0.0) || !(options_.twist_scale > 0.0) ||
      !(options_.control_smoothing >= 0.0))
    throw ConfigError("transcription scales must be positive");
  rotor_.geometry().validate(options_.bounds);

  times_ = grid_.node_times();
  const std::size_t nn = nodes();
  velocity_.resize(nn);
  weights_.assign(nn, 0.0);
  for (std::size_t k = 0; k < grid_.segments(); ++k) {
    const double h = grid_.boundaries[k + 1] - grid_.boundaries[k];
    weights_[2 * k] += h / 6.0;
    weights_[2 * k + 1] += 4.0 * h / 6.0;
    weights_[2 * k + 2] += h / 6.0;
  }
  double mean_cube = 0.0;
  for (std::size_t n = 0; n < nn; ++n) {
    velocity_[n] = flow_.velocity(times_[n]);
    mean_cube += weights_[n] * std::pow(velocity_[n], 3);
  }
  const double radius = rotor_.geometry().tip_radius;
  // Energy of one segment at unit power coefficient; keeps per-node gradients O(1).
  energy_ref_ = 0.5 * rotor_.fluid().density * std::numbers::pi * radius * radius * mean_cube /
                static_cast<double>(grid_.segments());

  const auto dim = static_cast<Eigen::Index>(size());
  lower_.resize(dim);
  upper_.resize(dim);
  scale_.resize(dim);
  const double u_hi = options_.u_max ? *options_.u_max : kInf;
  const double u_scale = options_.u_max ? *options_.u_max : 700.0;
  for (std::size_t n = 0; n < nn; ++n) {
    const auto w = static_cast<Eigen::Index>(omega_index(n)), u = static_cast<Eigen::Index>(u_index(n));
    lower_[w] = 0.0;
    upper_[w] = kInf;
    scale_[w] = options_.omega_scale;
    lower_[u] = 0.0;
    upper_[u] = u_hi;
    scale_[u] = u_scale;
  }
  for (std::size_t s = 0; s < blade_segments(); ++s) {
    const auto c = static_cast<Eigen::Index>(chord_index(s)), a = static_cast<Eigen::Index>(twist_index(s));
    lower_[c] = options_.bounds.chord_min;
    upper_[c] = options_.bounds.chord_max;
    scale_[c] = options_.chord_scale;
    lower_[a] = options_.bounds.twist_min_deg;
    upper_[a] = options_.bounds.twist_max_deg;
    scale_[a] = options_.twist_scale;
  }
}

void TranscribedProblem::check_size(const nlp::Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != size()) throw DomainError("decision vector does not match the layout");
}

BladeGeometry TranscribedProblem::geometry(const nlp::Vector& x) const {
  check_size(x);
  BladeGeometry g = rotor_.geometry();
  for (std::size_t s = 0; s < blade_segments(); ++s) {
    g.segments[s].chord = x[static_cast<Eigen::Index>(chord_index(s))];
    g.segments[s].twist_deg = x[static_cast<Eigen::Index>(twist_index(s))];
  }
  return g;
}

double TranscribedProblem::inertia(const nlp::Vector& x) const { return rotor_inertia(geometry(x), options_.material); }

std::vector<double> TranscribedProblem::rates(const nlp::Vector& x) const {
  const BladeGeometry g = geometry(x);
  const double inertia = rotor_inertia(g, options_.material);
  std::vector<double> f(nodes());
  for (std::size_t n = 0; n < nodes(); ++n) {
    const double omega = x[static_cast<Eigen::Index>(omega_index(n))];
    const double u = x[static_cast<Eigen::Index>(u_index(n))];
    f[n] = (rotor_torque(g, velocity_[n], omega, rotor_.polar(), rotor_.fluid()) - u) / inertia;
  }
  return f;
}

nlp::Vector TranscribedProblem::defect_residuals(const nlp::Vector& x) const {
  const std::vector<double> f = rates(x);
  nlp::Vector out(static_cast<Eigen::Index>(defect_rows()));
  collocation_defects(grid_, std::span<const double>(x.data(), nodes()), f, std::span<double>(out.data(), defect_rows()));
  return out;
}

double TranscribedProblem::energy(const nlp::Vector& x) const {
  const BladeGeometry g = geometry(x);
  double sum = 0.0;
  for (std::size_t n = 0; n < nodes(); ++n) {
    const double omega = x[static_cast<Eigen::Index>(omega_index(n))];
    sum += weights_[n] * rotor_torque(g, velocity_[n], omega, rotor_.polar(), rotor_.fluid()) * omega;
  }
  return sum;
}

double TranscribedProblem::midpoint_bend(const nlp::Vector& x, std::size_t k) const {
  const auto i = static_cast<Eigen::Index>(u_index(2 * k));
  return x[i + 1] - 0.5 * (x[i] + x[i + 2]);
}

void TranscribedProblem::evaluate(const nlp::Vector& x, bool derivatives, nlp::Evaluation& out) const {
  check_size(x);
  const std::size_t nn = nodes(), ns = blade_segments(), rows = defect_rows();
  const auto dim = static_cast<Eigen::Index>(size());
  const BladeGeometry g = geometry(x);
  const double inertia = rotor_inertia(g, options_.material);
  const double u_scale = scale_[static_cast<Eigen::Index>(u_index(0))];
  const double w_scale = options_.omega_scale;
  const double eps = options_.control_smoothing;

  std::vector<double> f(nn), q(nn);
  std::vector<TorqueGradient> tg(derivatives ? nn : 0);
  for (std::size_t n = 0; n < nn; ++n) {
    const double omega = x[static_cast<Eigen::Index>(omega_index(n))];
    if (derivatives) {
      rotor_torque_gradient(g, velocity_[n], omega, rotor_.polar(), rotor_.fluid(), tg[n]);
      q[n] = tg[n].torque;
    } else {
      q[n] = rotor_torque(g, velocity_[n], omega, rotor_.polar(), rotor_.fluid());
    }
    f[n] = (q[n] - x[static_cast<Eigen::Index>(u_index(n))]) / inertia;
  }

  double energy = 0.0, smooth = 0.0;
  for (std::size_t n = 0; n < nn; ++n) energy += weights_[n] * q[n] * x[static_cast<Eigen::Index>(omega_index(n))];
  for (std::size_t k = 0; k < grid_.segments(); ++k) {
    const double bend = midpoint_bend(x, k) / u_scale;
    smooth += bend * bend;
  }
  out.objective = -energy / energy_ref_ + eps * smooth;

  out.constraints.resize(static_cast<Eigen::Index>(rows));
  collocation_defects(grid_, std::span<const double>(x.data(), nn), f,
                      std::span<double>(out.constraints.data(), rows));
  out.constraints /= w_scale;
  if (!derivatives) return;

  const std::vector<double> dinertia =
      ns ? rotor_inertia_chord_gradient(g, options_.material) : std::vector<double>{};

  out.gradient.setZero(dim);
  for (std::size_t n = 0; n < nn; ++n) {
    const double omega = x[static_cast<Eigen::Index>(omega_index(n))];
    const double w = weights_[n] / energy_ref_;
    out.gradient[static_cast<Eigen::Index>(omega_index(n))] -= w * (q[n] + omega * tg[n].dq_domega);
    for (std::size_t s = 0; s < ns; ++s) {
      out.gradient[static_cast<Eigen::Index>(chord_index(s))] -= w * omega * tg[n].dq_dchord[s];
      out.gradient[static_cast<Eigen::Index>(twist_index(s))] -= w * omega * tg[n].dq_dtwist_deg[s];
    }
  }
  for (std::size_t k = 0; k < grid_.segments(); ++k) {
    const double d = 2.0 * eps * midpoint_bend(x, k) / (u_scale * u_scale);
    out.gradient[static_cast<Eigen::Index>(u_index(2 * k + 1))] += d;
    out.gradient[static_cast<Eigen::Index>(u_index(2 * k))] -= 0.5 * d;
    out.gradient[static_cast<Eigen::Index>(u_index(2 * k + 2))] -= 0.5 * d;
  }

  // Row += coef * df_n/dx, for the rate at node n.
  out.jacobian.setZero(static_cast<Eigen::Index>(rows), dim);
  auto add_rate = [&](Eigen::Index row, std::size_t n, double coef) {
    coef /= w_scale;
    out.jacobian(row, static_cast<Eigen::Index>(omega_index(n))) += coef * tg[n].dq_domega / inertia;
    out.jacobian(row, static_cast<Eigen::Index>(u_index(n))) -= coef / inertia;
    for (std::size_t s = 0; s < ns; ++s) {
      out.jacobian(row, static_cast<Eigen::Index>(chord_index(s))) +=
          coef * (tg[n].dq_dchord[s] - f[n] * dinertia[s]) / inertia;
      out.jacobian(row, static_cast<Eigen::Index>(twist_index(s))) += coef * tg[n].dq_dtwist_deg[s] / inertia;
    }
  };
  for (std::size_t k = 0; k < grid_.segments(); ++k) {
    const std::size_t i = 2 * k, m = i + 1, j = i + 2;
    const double h = grid_.boundaries[k + 1] - grid_.boundaries[k];
    const auto rs = static_cast<Eigen::Index>(2 * k), rh = rs + 1;
    out.jacobian(rs, static_cast<Eigen::Index>(omega_index(j))) += 1.0 / w_scale;
    out.jacobian(rs, static_cast<Eigen::Index>(omega_index(i))) -= 1.0 / w_scale;
    add_rate(rs, i, -h / 6.0);
    add_rate(rs, m, -4.0 * h / 6.0);
    add_rate(rs, j, -h / 6.0);
    out.jacobian(rh, static_cast<Eigen::Index>(omega_index(m))) += 1.0 / w_scale;
    out.jacobian(rh, static_cast<Eigen::Index>(omega_index(i))) -= 0.5 / w_scale;
    out.jacobian(rh, static_cast<Eigen::Index>(omega_index(j))) -= 0.5 / w_scale;
    add_rate(rh, i, -h / 8.0);
    add_rate(rh, j, h / 8.0);
  }
}

nlp::Problem TranscribedProblem::nlp() const {
  nlp::Problem p;
  p.lower = lower_;
  p.upper = upper_;
  p.scale = scale_;
  p.n_eq = static_cast<Eigen::Index>(defect_rows());
  p.evaluate = [this](const nlp::Vector& x, bool d, nlp::Evaluation& e) { evaluate(x, d, e); };
  return p;
}

nlp::Vector TranscribedProblem::pack(std::span<const double> omega, std::span<const double> u) const {
  if (omega.size() != nodes() || u.size() != nodes()) throw DomainError("node series do not match the grid");
  nlp::Vector x(static_cast<Eigen::Index>(size()));
  for (std::size_t n = 0; n < nodes(); ++n) {
    x[static_cast<Eigen::Index>(omega_index(n))] = omega[n];
    x[static_cast<Eigen::Index>(u_index(n))] = u[n];
  }
  for (std::size_t s = 0; s < blade_segments(); ++s) {
    x[static_cast<Eigen::Index>(chord_index(s))] = rotor_.geometry().segments[s].chord;
    x[static_cast<Eigen::Index>(twist_index(s))] = rotor_.geometry().segments[s].twist_deg;
  }
  return x;
}

nlp::Vector TranscribedProblem::initial_guess(const ControlLaw& law, double dt) const {
  SimulationSettings settings;
  settings.horizon = horizon_;
  settings.dt = dt;
  settings.material = options_.material;
  const Trajectory tr = simulate(rotor_, law, flow_, settings);
  std::vector<double> omega(nodes()), u(nodes());
  for (std::size_t n = 0; n < nodes(); ++n) {
    const double t = times_[n];
    const auto it = std::upper_bound(tr.t.begin(), tr.t.end(), t);
    const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - tr.t.begin()), 1, tr.size() - 1);
    const double w = std::clamp((t - tr.t[j - 1]) / (tr.t[j] - tr.t[j - 1]), 0.0, 1.0);
    omega[n] = tr.omega[j - 1] + w * (tr.omega[j] - tr.omega[j - 1]);
    u[n] = control_torque(law, omega[n], t).u;
  }
  nlp::Vector x = pack(omega, u);
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

OpenLoopSchedule control_schedule(const TranscribedProblem& problem, const nlp::Vector& x) {
  OpenLoopSchedule s;
  s.rule = OpenLoopSchedule::Interpolation::Collocation;
  s.t = problem.times();
  s.u.resize(problem.nodes());
  for (std::size_t n = 0; n < problem.nodes(); ++n) s.u[n] = x[static_cast<Eigen::Index>(problem.u_index(n))];
  return s;
}

double state_at(const TranscribedProblem& problem, const nlp::Vector& x, std::span<const double> rates, double t) {
  const auto& ts = problem.times();
  if (t <= ts.front()) return x[0];
  if (t >= ts.back()) return x[static_cast<Eigen::Index>(problem.nodes() - 1)];
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
  const std::size_t i = j - 1;
  const double h = ts[j] - ts[i];
  const double s = (t - ts[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double xi = x[static_cast<Eigen::Index>(i)], xj = x[static_cast<Eigen::Index>(j)];
  return h00 * xi + h10 * h * rates[i] + h01 * xj + h11 * h * rates[j];
}

Trajectory extract_trajectory(const TranscribedProblem& problem, const nlp::Vector& x, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double steps = std::round(problem.horizon() / dt);
  if (steps < 1.0 || std::abs(steps * dt - problem.horizon()) > 1e-9 * problem.horizon())
    throw ConfigError("horizon must be a positive multiple of dt");
  const std::vector<double> f = problem.rates(x);
  const BladeGeometry g = problem.geometry(x);
  ControlLaw law{control_schedule(problem, x), std::nullopt};

  Trajectory tr;
  const auto count = static_cast<std::size_t>(steps) + 1;
  tr.t.resize(count);
  tr.omega.resize(count);
  tr.u.resize(count);
  tr.torque.resize(count);
  tr.power.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = k + 1 == count ? problem.horizon() : static_cast<double>(k) * dt;
    const double omega = std::max(0.0, state_at(problem, x, f, t));
    tr.t[k] = t;
    tr.omega[k] = omega;
    tr.u[k] = control_torque(law, omega, t).u;
    tr.torque[k] = rotor_torque(g, problem.flow().velocity(t), omega, problem.rotor().polar(), problem.rotor().fluid());
    tr.power[k] = tr.torque[k] * omega;
  }
  tr.energy = trapezoid(tr.t, tr.power);
  return tr;
}

OlocResult solve_oloc(const TranscribedProblem& problem, const nlp::Vector& x0, const nlp::Options& options,
                      double dt) {
  OlocResult r;
  r.solution = nlp::solve(problem.nlp(), x0, options);
  const nlp::Vector& x = r.solution.x;
  r.geometry = problem.geometry(x);
  r.schedule = control_schedule(problem, x);
  r.trajectory = extract_trajectory(problem, x, dt);
  r.energy = problem.energy(x);
  r.max_defect = problem.defect_residuals(x).lpNorm<Eigen::Infinity>() / problem.options().omega_scale;
  return r;
}

}  // namespace hkt
