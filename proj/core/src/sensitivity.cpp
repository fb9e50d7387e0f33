#include "hkt/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hkt/error.hpp"

namespace hkt {

std::string to_string(UncertaintyKind kind) {
  switch (kind) {
    case UncertaintyKind::None: return "none";
    case UncertaintyKind::A: return "A";
    case UncertaintyKind::B: return "B";
    case UncertaintyKind::C: return "C";
  }
  return "unknown";
}

UncertaintyKind parse_uncertainty(const std::string& name) {
  if (name == "none") return UncertaintyKind::None;
  if (name == "A" || name == "a") return UncertaintyKind::A;
  if (name == "B" || name == "b") return UncertaintyKind::B;
  if (name == "C" || name == "c") return UncertaintyKind::C;
  throw ConfigError("unknown uncertainty type '" + name + "' (expected none, A, B or C)");
}

FlowProfile perturb_flow(const FlowProfile& base, UncertaintyKind kind) {
  const auto* s = std::get_if<Sinusoid>(&base.variant());
  if (!s) throw ConfigError("inflow perturbations need a sinusoidal base profile");
  Sinusoid p = *s;
  switch (kind) {
    case UncertaintyKind::None: return p;
    case UncertaintyKind::A: return FlowProfile::scaled(p, 1.1);
    case UncertaintyKind::B: p.frequency = 0.225; return p;
    case UncertaintyKind::C: p.phase += 0.2 * std::numbers::pi; return p;
  }
  return p;
}

DesignEvaluation evaluate_design(const RotorModel& rotor, const CcdResult& design, const FlowProfile& flow,
                                 const EvaluationSettings& settings) {
  const RotorModel model = rotor.with_geometry(design.geometry);
  SimulationSettings s;
  s.horizon = settings.horizon;
  s.dt = settings.dt;
  s.material = settings.material;
  if (design.mode == ControlMode::Oloc)
    s.initial_omega = design.initial_omega;
  else
    s.sensor = settings.sensor;
  DesignEvaluation out;
  out.trajectory = simulate(model, design.control_law(settings.u_max, settings.nu), flow, s);
  out.energy = out.trajectory.energy;
  out.stalled = out.trajectory.stalled();
  return out;
}

CcdResult redesigned_oloc_ceiling(const RotorModel& rotor, const BladeGeometry& geometry, const FlowProfile& flow,
                                  const CcdSpec& base) {
  CcdSpec spec = base;
  spec.mode = ControlMode::Oloc;
  spec.freeze_geometry = true;
  spec.initial_geometry = geometry;
  spec.flow = flow;
  return ccd_oloc(spec, rotor);
}

const SensitivityCell& SensitivityReport::cell(const std::string& controller, UncertaintyKind kind) const {
  for (const auto& c : cells)
    if (c.controller == controller && c.kind == kind) return c;
  throw DomainError("no sensitivity cell for " + controller + "/" + to_string(kind));
}

SensitivityReport sensitivity_table(const RotorModel& rotor, const SensitivityDesigns& designs, const CcdSpec& base,
                                    const std::vector<UncertaintyKind>& kinds, const std::vector<std::uint64_t>& seeds,
                                    const std::optional<SensorModel>& sensor) {
  if (seeds.empty()) throw ConfigError("sensitivity table needs at least one seed");
  SensitivityReport report;
  report.kinds = kinds;
  report.seeds = seeds;
  report.settings = {base.horizon, base.dt, base.u_max, base.nu, base.material, sensor};

  const std::vector<std::pair<std::string, const CcdResult*>> rows{
      {"oloc", &designs.oloc}, {"quadratic", &designs.quadratic}, {"linear", &designs.linear}};
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  for (const UncertaintyKind kind : kinds) {
    const FlowProfile flow = perturb_flow(base.flow, kind);
    double ceiling = kNaN;
    try {
      const CcdResult c = redesigned_oloc_ceiling(rotor, designs.oloc.geometry, flow, base);
      ceiling = c.energy;
      report.ceiling_status.push_back(nlp::to_string(c.status));
    } catch (const Error& e) {
      report.ceiling_status.push_back(std::string("error: ") + e.what());
    }
    report.ceilings.push_back(ceiling);

    for (const auto& [name, design] : rows) {
      SensitivityCell cell;
      cell.controller = name;
      cell.kind = kind;
      const bool noisy = design->mode != ControlMode::Oloc && sensor.has_value();
      const std::size_t runs = noisy ? seeds.size() : 1;
      try {
        for (std::size_t k = 0; k < runs; ++k) {
          EvaluationSettings es = report.settings;
          if (noisy) es.sensor->seed = seeds[k];
          const DesignEvaluation ev = evaluate_design(rotor, *design, flow, es);
          cell.seed_energies.push_back(ev.energy);
          cell.seed_stalled.push_back(ev.stalled);
          cell.energy += ev.energy / static_cast<double>(runs);
          cell.stalled = cell.stalled || ev.stalled;
        }
        cell.ratio = cell.energy / ceiling;
      } catch (const Error& e) {
        cell.error = e.what();
        cell.energy = kNaN;
        cell.ratio = kNaN;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace hkt
