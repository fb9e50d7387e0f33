#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "artifacts.hpp"
#include "config.hpp"
#include "hkt/error.hpp"

namespace hkt::cli {

namespace {

namespace fs = std::filesystem;

struct Invocation {
  std::string command;
  std::string config_file;
  Overrides overrides;
  double constraint = 0.0;
  int scenario = 0;
  std::string out_dir;
  std::uint64_t seed = 0;
  double horizon = 0.0, dt = 0.0, gain = 0.0;
  int segments = 0;
  std::string law;
  std::map<std::string, CLI::Option*> given;

  bool has(const std::string& name) const {
    const auto it = given.find(name);
    return it != given.end() && it->second->count() > 0;
  }
};

CampaignConfig resolve(Invocation& inv) {
  Overrides& o = inv.overrides;
  if (inv.has("scenario")) o.scenario = inv.scenario;
  if (inv.has("constraint")) o.u_max = inv.constraint;
  if (inv.has("out")) o.output_dir = inv.out_dir;
  if (inv.has("seed")) o.seed = inv.seed;
  if (inv.has("horizon")) o.horizon = inv.horizon;
  if (inv.has("dt")) o.dt = inv.dt;
  if (inv.has("segments")) o.segments = inv.segments;
  if (inv.has("law")) o.law = inv.law;
  if (inv.has("gain")) o.gain = inv.gain;
  if (o.u_max && o.no_constraint) throw ConfigError("--constraint and --no-constraint are exclusive");
  Json file;
  fs::path base;
  if (!inv.config_file.empty()) {
    file = read_json_file(inv.config_file);
    base = fs::path(inv.config_file).parent_path();
  }
  return load_config(file, o, base);
}

double radius(const CcdResult& r) { return r.geometry.tip_radius; }

Json settings_json(const CampaignConfig& c) {
  return {{"horizon", c.horizon},
          {"dt", c.dt},
          {"u_max", c.u_max ? Json(*c.u_max) : Json(nullptr)},
          {"nu", c.nu},
          {"scenario", c.scenario}};
}

std::string status_text(const CcdResult& r) { return nlp::to_string(r.status); }

// One design: trajectory and geometry CSVs plus its JSON block.
Json emit_design(ArtifactWriter& w, const std::string& prefix, const std::string& label, const CcdResult& r,
                 const FlowProfile& flow) {
  const std::string traj = prefix + "_" + label + "_trajectory.csv";
  w.trajectory(traj, r.trajectory, flow, radius(r));
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : r.geometry.segments)
    rows.push_back({num(s.r_mid), num(s.dr), num(s.chord), num(s.twist_deg)});
  w.csv(prefix + "_" + label + "_geometry.csv", {"r_mid_m", "dr_m", "chord_m", "twist_deg"}, rows);
  Json j = ccd_result_json(r, traj);
  j["label"] = label;
  return j;
}

void energy_table(ArtifactWriter& w, const std::string& name, const Comparison& cmp) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : cmp.rows) {
    if (!row.result) {
      rows.push_back({row.label, "", "nan", "nan", "", "error"});
      continue;
    }
    const auto& r = *row.result;
    rows.push_back({row.label, r.gain ? num(*r.gain) : "", num(r.energy), num(100.0 * row.delta),
                    format_delta(row.delta), status_text(r)});
  }
  w.csv(name, {"controller", "gain", "energy_J", "delta_percent", "delta", "status"}, rows);
}

void overlays(ArtifactWriter& w, const std::string& prefix, const Comparison& cmp, const FlowProfile& flow) {
  std::vector<std::vector<std::string>> geom, traj, cp;
  for (const auto& row : cmp.rows) {
    if (!row.result) continue;
    const auto& r = *row.result;
    for (std::size_t i = 0; i < r.geometry.segments.size(); ++i) {
      const auto& s = r.geometry.segments[i];
      geom.push_back({row.label, std::to_string(i), num(s.r_mid), num(s.chord), num(s.twist_deg)});
    }
    const auto& tr = r.trajectory;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const double v = flow.velocity(tr.t[k]);
      traj.push_back({row.label, num(tr.t[k]), num(v), num(tr.omega[k]), num(tr.omega[k] * radius(r) / v),
                      num(tr.u[k]), num(tr.torque[k]), num(tr.power[k])});
    }
    for (const auto& p : r.cp.points)
      cp.push_back({row.label, num(p.tsr), p.converged ? num(p.cp) : "nan", p.converged ? "1" : "0"});
  }
  w.csv(prefix + "_geometry_overlay.csv", {"controller", "segment", "r_mid_m", "chord_m", "twist_deg"}, geom);
  w.csv(prefix + "_trajectory_overlay.csv", {"controller", "t", "v", "omega", "tsr", "u", "Q", "P"}, traj);
  w.csv(prefix + "_cp_overlay.csv", {"controller", "tsr", "cp", "converged"}, cp);
}

std::string label_of(ControlMode m) { return to_string(m); }

struct SolverLog {
  std::ostringstream stream;
  void attach(CcdSpec& spec, bool enabled) { spec.solver.log = enabled ? &stream : nullptr; }
};

int cmd_bem_curve(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  const RotorModel rotor = c.rotor();
  const auto grid = tsr_grid(c.tsr_min, c.tsr_max, static_cast<std::size_t>(c.tsr_points));
  const CpCurve cp = cp_curve(rotor.geometry(), rotor.polar(), rotor.fluid(), grid);
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : cp.points) rows.push_back({num(p.tsr), p.converged ? num(p.cp) : "nan", p.converged ? "1" : "0"});
  const std::string prefix = c.tag();
  w.csv(prefix + "_cp_curve.csv", {"tsr", "cp", "converged"}, rows);
  Json j = {{"command", "bem-curve"}, {"tag", prefix}, {"cp_curve", cp_curve_json(cp)},
            {"optimal_quadratic_gain", optimal_quadratic_gain(rotor.geometry(), rotor.fluid(), cp)},
            {"geometry", geometry_json(rotor.geometry())}};
  w.json(prefix + "_cp_curve.json", j);
  out << "best TSR " << num(cp.best_tsr) << ", Cp " << num(cp.best_cp) << "\n";
  return 0;
}

int cmd_simulate(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  const RotorModel rotor = c.rotor();
  const ControlMode mode = parse_control_mode(c.simulate.law);
  const double gain = c.simulate.gain ? *c.simulate.gain : initial_gain(mode, rotor, c.flow, c.horizon);
  ControlLaw law;
  if (mode == ControlMode::LinearFeedback)
    law.law = LinearFeedback{gain};
  else
    law.law = QuadraticFeedback{gain};
  if (c.u_max) law.saturation = Saturation{*c.u_max, c.nu};
  SimulationSettings s;
  s.horizon = c.horizon;
  s.dt = c.dt;
  s.material = c.material;
  s.initial_omega = c.simulate.initial_omega;
  if (c.simulate.sensor) {
    s.sensor = c.sensor;
    s.sensor->seed = c.seed;
  }
  const Trajectory tr = simulate(rotor, law, c.flow, s);
  const std::string prefix = c.tag() + "_simulate";
  w.trajectory(prefix + ".csv", tr, c.flow, rotor.geometry().tip_radius);
  Json settings = settings_json(c);
  settings["law"] = c.simulate.law;
  settings["gain"] = gain;
  settings["sensor"] = c.simulate.sensor;
  settings["initial_omega"] = tr.omega.front();
  w.json(prefix + ".json", {{"command", "simulate"},
                            {"tag", c.tag()},
                            {"energy_J", tr.energy},
                            {"stall_events", tr.stall_times.size()},
                            {"settings", settings}});
  out << "energy " << num(tr.energy) << " J, " << tr.stall_times.size() << " stall events\n";
  return 0;
}

int cmd_oloc(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  const RotorModel rotor = c.rotor();
  CcdSpec spec = c.ccd_spec(ControlMode::Oloc);
  spec.freeze_geometry = true;
  SolverLog log;
  log.attach(spec, c.solver_log);
  const CcdResult r = run_ccd(spec, rotor);
  const std::string prefix = c.tag() + "_oloc";
  Json j = emit_design(w, c.tag(), "oloc", r, c.flow);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.schedule->t.size(); ++i) rows.push_back({num(r.schedule->t[i]), num(r.schedule->u[i])});
  w.csv(prefix + "_schedule.csv", {"t", "u"}, rows);
  if (c.solver_log) w.jsonl(prefix + "_solver.jsonl", log.stream.str());
  w.json(prefix + ".json", {{"command", "oloc"}, {"tag", c.tag()}, {"settings", settings_json(c)}, {"designs", {j}}});
  out << "oloc energy " << num(r.energy) << " J (" << status_text(r) << ")\n";
  return r.converged() ? 0 : 3;
}

// Runs the requested controllers (and optionally the baseline-geometry OLOC)
// in a fixed order. Failed runs keep their error text.
Comparison run_designs(const CampaignConfig& c, const RotorModel& rotor, std::vector<ControlMode> modes,
                       bool baseline, std::map<std::string, std::string>& logs) {
  Comparison cmp;
  auto run = [&](const std::string& label, ControlMode mode, bool freeze) {
    ComparisonRow row;
    row.label = label;
    row.mode = mode;
    CcdSpec spec = c.ccd_spec(mode);
    spec.freeze_geometry = freeze;
    SolverLog log;
    log.attach(spec, c.solver_log);
    try {
      row.result = run_ccd(spec, rotor);
    } catch (const SolverFailure& e) {
      row.error = e.what();
    } catch (const IntegrationFailure& e) {
      row.error = e.what();
    }
    logs[label] = log.stream.str();
    cmp.rows.push_back(std::move(row));
  };
  for (const ControlMode m : modes) run(label_of(m), m, false);
  if (baseline) run("oloc-baseline", ControlMode::Oloc, true);

  const auto ref = std::find_if(cmp.rows.begin(), cmp.rows.end(), [](const ComparisonRow& r) { return r.result.has_value(); });
  if (ref != cmp.rows.end()) {
    cmp.reference_energy = ref->result->energy;
    for (auto& row : cmp.rows)
      if (row.result) row.delta = (row.result->energy - cmp.reference_energy) / cmp.reference_energy;
  }
  return cmp;
}

std::vector<ControlMode> ordered(std::vector<ControlMode> modes) {
  auto rank = [](ControlMode m) { return m == ControlMode::Oloc ? 0 : m == ControlMode::QuadraticFeedback ? 1 : 2; };
  std::sort(modes.begin(), modes.end(), [&](ControlMode a, ControlMode b) { return rank(a) < rank(b); });
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  return modes;
}

int emit_comparison(const std::string& command, const CampaignConfig& c, const Comparison& cmp,
                    const std::map<std::string, std::string>& logs, ArtifactWriter& w, std::ostream& out,
                    bool with_overlays) {
  const std::string prefix = c.tag() + "_" + command;
  Json designs = Json::array();
  bool failed = false;
  for (const auto& row : cmp.rows) {
    if (row.result) {
      Json d = emit_design(w, prefix, row.label, *row.result, c.flow);
      d["delta"] = row.delta;
      designs.push_back(d);
    } else {
      designs.push_back({{"label", row.label}, {"error", row.error}});
      failed = true;
    }
    if (c.solver_log) w.jsonl(prefix + "_" + row.label + "_solver.jsonl", logs.at(row.label));
  }
  energy_table(w, prefix + "_energy.csv", cmp);
  if (with_overlays) overlays(w, prefix, cmp, c.flow);
  w.json(prefix + ".json", {{"command", command},
                            {"tag", c.tag()},
                            {"settings", settings_json(c)},
                            {"reference_energy_J", cmp.reference_energy},
                            {"designs", designs}});
  for (const auto& row : cmp.rows) {
    out << row.label << ": ";
    if (row.result)
      out << num(row.result->energy) << " J " << format_delta(row.delta) << " " << status_text(*row.result) << "\n";
    else
      out << "failed: " << row.error << "\n";
  }
  return failed ? 3 : 0;
}

int cmd_ccd(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  std::map<std::string, std::string> logs;
  const Comparison cmp = run_designs(c, c.rotor(), ordered(c.controllers), false, logs);
  return emit_comparison("ccd", c, cmp, logs, w, out, false);
}

int cmd_compare(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  std::map<std::string, std::string> logs;
  const std::vector<ControlMode> all{ControlMode::Oloc, ControlMode::QuadraticFeedback, ControlMode::LinearFeedback};
  const Comparison cmp = run_designs(c, c.rotor(), all, c.include_baseline, logs);
  return emit_comparison("compare", c, cmp, logs, w, out, true);
}

int cmd_sensitivity(const CampaignConfig& c, ArtifactWriter& w, std::ostream& out) {
  for (const auto k : c.uncertainty) perturb_flow(c.flow, k);  // reject unsupported flows before designing
  const RotorModel rotor = c.rotor();
  SensitivityDesigns designs{run_ccd(c.ccd_spec(ControlMode::Oloc), rotor),
                             run_ccd(c.ccd_spec(ControlMode::QuadraticFeedback), rotor),
                             run_ccd(c.ccd_spec(ControlMode::LinearFeedback), rotor)};
  const SensitivityReport rep =
      sensitivity_table(rotor, designs, c.ccd_spec(ControlMode::Oloc), c.uncertainty, c.seeds, c.sensor);

  std::vector<std::string> header{"controller"};
  for (const auto k : rep.kinds) {
    const std::string t = "type_" + to_string(k);
    header.insert(header.end(), {t + "_energy_J", t + "_percent", t + "_stalled"});
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> ceiling{"oloc-redesigned"};
  for (std::size_t k = 0; k < rep.kinds.size(); ++k)
    ceiling.insert(ceiling.end(), {num(rep.ceilings[k]), num(100.0), "0"});
  rows.push_back(ceiling);
  bool failed = false;
  for (const std::string name : {"oloc", "quadratic", "linear"}) {
    std::vector<std::string> row{name};
    for (const auto k : rep.kinds) {
      const auto& cell = rep.cell(name, k);
      failed = failed || !cell.error.empty();
      row.insert(row.end(), {num(cell.energy), num(100.0 * cell.ratio), cell.stalled ? "1" : "0"});
    }
    rows.push_back(row);
  }
  const std::string prefix = c.tag() + "_sensitivity";
  w.csv(prefix + ".csv", header, rows);
  Json j = sensitivity_json(rep);
  j["command"] = "sensitivity";
  j["tag"] = c.tag();
  j["designs"] = Json::array();
  for (const CcdResult* d : {&designs.oloc, &designs.quadratic, &designs.linear}) {
    Json dj = ccd_result_json(*d, "");
    dj.erase("trajectory_csv");
    dj["label"] = to_string(d->mode);
    j["designs"].push_back(dj);
  }
  w.json(prefix + ".json", j);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
  return failed ? 3 : 0;
}

// Collects the JSON artifacts of a directory, all of which must share one
// configuration hash.
int cmd_report(const CampaignConfig& c, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(c.output_dir))
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().stem().string().find("_report") == std::string::npos)
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no artifacts to report in " + c.output_dir.string());

  std::set<std::string> hashes;
  std::map<std::string, Json> by_command;
  Json index = Json::array();
  std::string tag;
  for (const auto& f : files) {
    Json j = read_json_file(f);
    if (!j.is_object() || !j.contains("config_hash") || !j.contains("command")) continue;
    hashes.insert(j["config_hash"].get<std::string>());
    index.push_back({{"file", f.filename().string()}, {"command", j["command"]}});
    by_command[j["command"].get<std::string>()] = j;
    tag = j.value("tag", tag);
  }
  if (hashes.empty()) throw ConfigError("no artifacts to report in " + c.output_dir.string());
  if (hashes.size() > 1) {
    std::string list;
    for (const auto& h : hashes) list += (list.empty() ? "" : ", ") + h;
    throw ConfigError("artifacts in " + c.output_dir.string() + " mix config hashes: " + list);
  }
  ArtifactWriter rw(c.output_dir, *hashes.begin());
  const std::string prefix = tag + "_report";

  const Json* designs = nullptr;
  if (by_command.count("compare"))
    designs = &by_command["compare"]["designs"];
  else if (by_command.count("ccd"))
    designs = &by_command["ccd"]["designs"];
  if (designs) {
    std::vector<std::vector<std::string>> table, geom, cp, traj;
    for (const auto& d : *designs) {
      const std::string label = d["label"];
      if (d.contains("error")) {
        table.push_back({label, "", "nan", "nan", "error"});
        continue;
      }
      const double delta = d.value("delta", 0.0);
      table.push_back({label, d["gain"].is_null() ? "" : num(d["gain"].get<double>()), num(d["energy_J"].get<double>()),
                       num(100.0 * delta), format_delta(delta)});
      const auto& g = d["geometry"];
      for (std::size_t i = 0; i < g["chord_m"].size(); ++i)
        geom.push_back({label, std::to_string(i), num(g["chord_m"][i].get<double>()), num(g["twist_deg"][i].get<double>())});
      for (const auto& p : d["cp_curve"]["points"])
        cp.push_back({label, num(p[0].get<double>()), p[1].is_null() ? "nan" : num(p[1].get<double>())});
      for (const auto& r : read_csv_rows(c.output_dir / d["trajectory_csv"].get<std::string>()))
        traj.push_back({label, r[0], r[2], r[3], r[4], r[5]});
    }
    rw.csv(prefix + "_energy_table.csv", {"controller", "gain", "energy_J", "delta_percent", "delta"}, table);
    rw.csv(prefix + "_geometry.csv", {"controller", "segment", "chord_m", "twist_deg"}, geom);
    rw.csv(prefix + "_cp.csv", {"controller", "tsr", "cp"}, cp);
    rw.csv(prefix + "_trajectories.csv", {"controller", "t", "omega", "tsr", "u", "Q"}, traj);
  }
  if (by_command.count("sensitivity")) {
    const Json& s = by_command["sensitivity"];
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : s["types"]) {
      const std::string type = t["type"];
      rows.push_back({type, "oloc-redesigned", t["ceiling_J"].is_null() ? "nan" : num(t["ceiling_J"].get<double>()),
                      num(100.0), "0"});
      for (const auto& cell : t["cells"])
        rows.push_back({type, cell["controller"].get<std::string>(),
                        cell["energy_J"].is_null() ? "nan" : num(cell["energy_J"].get<double>()),
                        cell["percent_of_ceiling"].is_null() ? "nan" : num(cell["percent_of_ceiling"].get<double>()),
                        cell["stalled"].get<bool>() ? "1" : "0"});
    }
    rw.csv(prefix + "_sensitivity_table.csv", {"type", "controller", "energy_J", "percent_of_ceiling", "stalled"}, rows);
  }
  // Inflow profile at 0.1 s resolution over the configured horizon.
  {
    std::vector<std::vector<std::string>> rows;
    const int n = static_cast<int>(std::round(c.horizon / 0.1));
    for (int k = 0; k <= n; ++k) {
      const double t = c.horizon * k / n;
      rows.push_back({num(t), num(c.flow.velocity(t))});
    }
    rw.csv(prefix + "_inflow.csv", {"t", "v"}, rows);
  }
  rw.json(prefix + ".json", {{"command", "report"}, {"tag", tag}, {"artifacts", index}, {"written", rw.written()}});
  out << "report over " << index.size() << " artifacts written to " << c.output_dir.string() << "\n";
  return 0;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hydrokinetic turbine control co-design"};
  app.require_subcommand(1, 1);
  Invocation inv;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"bem-curve", "Cp versus tip speed ratio of the configured rotor"},
      {"simulate", "closed-loop simulation of a feedback law"},
      {"oloc", "open-loop optimal control on the configured geometry"},
      {"ccd", "co-design for the configured controllers"},
      {"compare", "co-design for every controller plus the baseline-geometry OLOC"},
      {"sensitivity", "co-design followed by the inflow uncertainty study"},
      {"report", "aggregate the artifacts of the output directory"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", inv.config_file, "JSON configuration file")->check(CLI::ExistingFile);
    inv.given["scenario"] = sub->add_option("--scenario", inv.scenario, "1 (step inflow) or 2 (sinusoid)");
    inv.given["constraint"] = sub->add_option("--constraint", inv.constraint, "control torque limit, N m");
    sub->add_flag("--no-constraint", inv.overrides.no_constraint, "drop any torque limit");
    inv.given["out"] = sub->add_option("--out", inv.out_dir, "output directory");
    inv.given["seed"] = sub->add_option("--seed", inv.seed, "solver and sensor seed");
    inv.given["horizon"] = sub->add_option("--horizon", inv.horizon, "simulation horizon, s");
    inv.given["dt"] = sub->add_option("--dt", inv.dt, "time step, s");
    inv.given["segments"] = sub->add_option("--segments", inv.segments, "collocation segments");
    inv.given["law"] = sub->add_option("--law", inv.law, "simulate: quadratic or linear");
    inv.given["gain"] = sub->add_option("--gain", inv.gain, "simulate: feedback gain");
    sub->add_option("--controllers", inv.overrides.controllers, "oloc, quadratic, linear")->delimiter(',');
    sub->callback([&inv, sub] { inv.command = sub->get_name(); });
  }
  // The subcommands share storage; only the one that ran fills it.
  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what(), 2);
    return 2;
  }
  // `given` holds the options of the last subcommand registered.
  CLI::App* ran = app.get_subcommand(inv.command);
  for (auto& [name, opt] : inv.given) opt = ran->get_option("--" + name);

  try {
    const CampaignConfig c = resolve(inv);
    if (inv.command == "report") return cmd_report(c, out);
    ArtifactWriter w(c.output_dir, c.hash);
    if (inv.command == "bem-curve") return cmd_bem_curve(c, w, out);
    if (inv.command == "simulate") return cmd_simulate(c, w, out);
    if (inv.command == "oloc") return cmd_oloc(c, w, out);
    if (inv.command == "ccd") return cmd_ccd(c, w, out);
    if (inv.command == "compare") return cmd_compare(c, w, out);
    return cmd_sensitivity(c, w, out);
  } catch (const ConfigError& e) {
    emit_error(err, "config", e.what(), 2);
    return 2;
  } catch (const DomainError& e) {
    emit_error(err, "domain", e.what(), 2);
    return 2;
  } catch (const SolverFailure& e) {
    emit_error(err, "solver", e.what(), 3);
    return 3;
  } catch (const IntegrationFailure& e) {
    emit_error(err, "integration", e.what(), 3);
    return 3;
  } catch (const Json::exception& e) {
    emit_error(err, "config", e.what(), 2);
    return 2;
  } catch (const fs::filesystem_error& e) {
    emit_error(err, "io", e.what(), 2);
    return 2;
  }
}

}  // namespace hkt::cli
