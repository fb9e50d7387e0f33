#include "hkt/ccd.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "hkt/error.hpp"

namespace hkt {

std::string to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::Oloc: return "oloc";
    case ControlMode::LinearFeedback: return "linear";
    case ControlMode::QuadraticFeedback: return "quadratic";
  }
  return "unknown";
}

ControlMode parse_control_mode(const std::string& name) {
  if (name == "oloc") return ControlMode::Oloc;
  if (name == "linear") return ControlMode::LinearFeedback;
  if (name == "quadratic") return ControlMode::QuadraticFeedback;
  throw ConfigError("unknown control mode '" + name + "' (expected oloc, linear or quadratic)");
}

nlp::Options ccd_solver_options() {
  nlp::Options o;
  o.feasibility_tol = 1e-6;
  o.optimality_tol = 1e-5;
  o.max_iter = 20000;
  return o;
}

std::pair<double, double> CcdSpec::gain_range() const {
  if (gain_bounds) return *gain_bounds;
  return mode == ControlMode::LinearFeedback ? std::pair{0.0, 500.0} : std::pair{0.0, 50.0};
}

void CcdSpec::validate() const {
  if (!(horizon > 0.0) || !(dt > 0.0)) throw ConfigError("horizon and dt must be positive");
  if (u_max && !(*u_max > 0.0)) throw ConfigError("u_max must be positive");
  if (!(nu > 0.0)) throw ConfigError("saturation smoothing nu must be positive");
  if (segments < 1) throw ConfigError("at least one collocation segment is needed");
  const auto [lo, hi] = gain_range();
  if (!(lo >= 0.0) || !(hi >= lo)) throw ConfigError("gain bounds must satisfy 0 <= lo <= hi");
  if (initial_gain && (*initial_gain < lo || *initial_gain > hi)) throw ConfigError("initial gain outside its bounds");
  try {
    initial_geometry.validate(bounds);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("initial geometry: ") + e.what());
  }
  flow.validate(horizon);
}

double optimal_quadratic_gain(const BladeGeometry& geometry, const FluidEnvironment& fluid, const CpCurve& cp) {
  if (!(cp.best_tsr > 0.0)) throw DomainError("Cp curve has no positive optimum");
  const double r = geometry.tip_radius;
  return 0.5 * fluid.density * std::numbers::pi * std::pow(r, 5) * cp.best_cp / std::pow(cp.best_tsr, 3);
}

double mean_velocity(const FlowProfile& flow, double horizon) {
  constexpr int panels = 1000;
  const double h = horizon / panels;
  double sum = flow.velocity(0.0) + flow.velocity(horizon);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * flow.velocity(k * h);
  return sum * h / 3.0 / horizon;
}

std::vector<double> report_tsr_grid() { return tsr_grid(1.0, 12.0, 45); }

double initial_gain(ControlMode mode, const RotorModel& rotor, const FlowProfile& flow, double horizon) {
  const CpCurve cp = cp_curve(rotor.geometry(), rotor.polar(), rotor.fluid(), report_tsr_grid());
  const double k2 = optimal_quadratic_gain(rotor.geometry(), rotor.fluid(), cp);
  if (mode == ControlMode::QuadraticFeedback) return k2;
  if (mode == ControlMode::LinearFeedback)
    return k2 * cp.best_tsr * mean_velocity(flow, horizon) / rotor.geometry().tip_radius;
  throw DomainError("open-loop designs have no gain");
}

ControlLaw CcdResult::control_law(std::optional<double> u_max, double nu) const {
  ControlLaw law;
  if (mode == ControlMode::Oloc) {
    if (!schedule) throw DomainError("OLOC result carries no schedule");
    law.law = *schedule;
    return law;
  }
  if (!gain) throw DomainError("feedback result carries no gain");
  if (mode == ControlMode::LinearFeedback)
    law.law = LinearFeedback{*gain};
  else
    law.law = QuadraticFeedback{*gain};
  if (u_max) law.saturation = Saturation{*u_max, nu};
  return law;
}

namespace {

SimulationSettings simulation_settings(const CcdSpec& spec) {
  SimulationSettings s;
  s.horizon = spec.horizon;
  s.dt = spec.dt;
  s.material = spec.material;
  return s;
}

ControlLaw feedback_law(ControlMode mode, double gain, const CcdSpec& spec) {
  CcdResult r;
  r.mode = mode;
  r.gain = gain;
  return r.control_law(spec.u_max, spec.nu);
}

double ideal_energy(const RotorModel& rotor, const FlowProfile& flow, double horizon) {
  constexpr int panels = 1000;
  const double h = horizon / panels;
  auto cube = [&](double t) { return std::pow(flow.velocity(t), 3); };
  double sum = cube(0.0) + cube(horizon);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * cube(k * h);
  const double r = rotor.geometry().tip_radius;
  return 0.5 * rotor.fluid().density * std::numbers::pi * r * r * sum * h / 3.0;
}

void finish(CcdResult& r, const RotorModel& rotor, const nlp::Solution& sol) {
  r.cp = cp_curve(r.geometry, rotor.polar(), rotor.fluid(), report_tsr_grid());
  r.status = sol.status;
  r.iterations = sol.iterations;
  r.max_violation = sol.max_violation;
  r.optimality = sol.optimality;
}

}  // namespace

CcdResult ccd_oloc(const CcdSpec& spec, const RotorModel& rotor_in) {
  if (spec.mode != ControlMode::Oloc) throw ConfigError("ccd_oloc needs the OLOC control mode");
  spec.validate();
  const RotorModel rotor = rotor_in.with_geometry(spec.initial_geometry);
  TranscriptionOptions to;
  to.segments = spec.segments;
  to.u_max = spec.u_max;
  to.free_geometry = !spec.freeze_geometry;
  to.bounds = spec.bounds;
  to.material = spec.material;
  to.control_smoothing = spec.control_smoothing;
  const TranscribedProblem problem(rotor, spec.flow, spec.horizon, to);

  ControlLaw warm{QuadraticFeedback{initial_gain(ControlMode::QuadraticFeedback, rotor, spec.flow, spec.horizon)},
                  std::nullopt};
  if (spec.u_max) warm.saturation = Saturation{*spec.u_max, spec.nu};
  const nlp::Vector x0 = problem.initial_guess(warm, spec.dt);

  nlp::Options options = spec.solver;
  options.seed = spec.seed;
  nlp::Problem nlp_problem = problem.nlp();
  nlp_problem.gradient_mode = spec.gradient_mode;
  const nlp::Solution sol = nlp::solve(nlp_problem, x0, options);

  CcdResult r;
  r.mode = ControlMode::Oloc;
  r.seed = spec.seed;
  r.geometry = problem.geometry(sol.x);
  r.schedule = control_schedule(problem, sol.x);
  r.initial_omega = sol.x[0];
  r.trajectory = extract_trajectory(problem, sol.x, spec.dt);
  r.energy = r.trajectory.energy;
  r.collocation_energy = problem.energy(sol.x);
  finish(r, rotor, sol);
  return r;
}

CcdResult ccd_feedback(const CcdSpec& spec, const RotorModel& rotor_in) {
  if (spec.mode == ControlMode::Oloc) throw ConfigError("ccd_feedback needs a feedback control mode");
  spec.validate();
  const RotorModel rotor = rotor_in.with_geometry(spec.initial_geometry);
  const std::size_t ns = spec.initial_geometry.segments.size();
  const std::size_t ng = spec.freeze_geometry ? 0 : 2 * ns;
  const auto dim = static_cast<Eigen::Index>(1 + ng);
  const auto [k_lo, k_hi] = spec.gain_range();
  const double k0 = std::clamp(
      spec.initial_gain ? *spec.initial_gain : initial_gain(spec.mode, rotor, spec.flow, spec.horizon), k_lo, k_hi);

  nlp::Problem p;
  p.lower.resize(dim);
  p.upper.resize(dim);
  p.scale.resize(dim);
  p.lower[0] = k_lo;
  p.upper[0] = k_hi;
  p.scale[0] = k0 > 0.0 ? k0 : std::max(k_hi, 1.0);
  nlp::Vector x0(dim);
  x0[0] = k0;
  for (std::size_t i = 0; i < ng / 2; ++i) {
    const auto c = static_cast<Eigen::Index>(1 + i), a = static_cast<Eigen::Index>(1 + ns + i);
    p.lower[c] = spec.bounds.chord_min;
    p.upper[c] = spec.bounds.chord_max;
    p.scale[c] = 1.0;
    p.lower[a] = spec.bounds.twist_min_deg;
    p.upper[a] = spec.bounds.twist_max_deg;
    p.scale[a] = 30.0;
    x0[c] = spec.initial_geometry.segments[i].chord;
    x0[a] = spec.initial_geometry.segments[i].twist_deg;
  }
  p.gradient_mode = spec.gradient_mode;

  const double e_ref = ideal_energy(rotor, spec.flow, spec.horizon);
  const SimulationSettings settings = simulation_settings(spec);
  auto design = [&](const nlp::Vector& x) {
    BladeGeometry g = spec.initial_geometry;
    if (ng) g.set_design_vector(std::span<const double>(x.data() + 1, ng));
    return g;
  };
  p.evaluate = [&](const nlp::Vector& x, bool derivatives, nlp::Evaluation& e) {
    const RotorModel model = rotor.with_geometry(design(x));
    const ControlLaw law = feedback_law(spec.mode, x[0], spec);
    e.constraints.resize(0);
    if (!derivatives) {
      e.objective = -simulate(model, law, spec.flow, settings).energy / e_ref;
      return;
    }
    const EnergyGradient eg = simulate_with_gradient(model, law, spec.flow, settings);
    e.objective = -eg.energy / e_ref;
    e.gradient.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) e.gradient[i] = -eg.gradient[static_cast<std::size_t>(i)] / e_ref;
  };

  nlp::Options options = spec.solver;
  options.seed = spec.seed;
  const nlp::Solution sol = nlp::solve(p, x0, options);

  CcdResult r;
  r.mode = spec.mode;
  r.seed = spec.seed;
  r.geometry = design(sol.x);
  r.gain = sol.x[0];
  const RotorModel model = rotor.with_geometry(r.geometry);
  r.trajectory = simulate(model, r.control_law(spec.u_max, spec.nu), spec.flow, settings);
  r.initial_omega = r.trajectory.omega.front();
  r.energy = r.trajectory.energy;
  finish(r, rotor, sol);
  return r;
}

CcdResult run_ccd(const CcdSpec& spec, const RotorModel& rotor) {
  return spec.mode == ControlMode::Oloc ? ccd_oloc(spec, rotor) : ccd_feedback(spec, rotor);
}

bool Comparison::complete() const {
  return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.result.has_value(); });
}

Comparison compare_controllers(const CcdSpec& spec, const RotorModel& rotor, bool include_baseline) {
  struct Member {
    std::string label;
    ControlMode mode;
    bool frozen;
  };
  std::vector<Member> members{{"oloc", ControlMode::Oloc, spec.freeze_geometry},
                              {"quadratic", ControlMode::QuadraticFeedback, spec.freeze_geometry},
                              {"linear", ControlMode::LinearFeedback, spec.freeze_geometry}};
  if (include_baseline) members.push_back({"oloc-baseline", ControlMode::Oloc, true});

  Comparison c;
  for (const Member& m : members) {
    CcdSpec s = spec;
    s.mode = m.mode;
    s.freeze_geometry = m.frozen;
    if (m.mode != spec.mode) {
      s.initial_gain.reset();
      s.gain_bounds.reset();
    }
    ComparisonRow row{m.label, m.mode, std::nullopt, {}, 0.0};
    try {
      row.result = run_ccd(s, rotor);
    } catch (const Error& e) {
      row.error = e.what();
    }
    c.rows.push_back(std::move(row));
  }
  if (c.rows.front().result) {
    c.reference_energy = c.rows.front().result->energy;
    for (auto& row : c.rows)
      if (row.result) row.delta = (row.result->energy - c.reference_energy) / c.reference_energy;
  }
  return c;
}

std::string format_delta(double delta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "(%+.3f%%)", 100.0 * delta);
  return buf;
}

}  // namespace hkt
