#include "artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt::cli {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, std::string hash)
    : dir_(std::move(dir)), hash_(std::move(hash)) {}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
  // Created on first use so that a command failing early leaves nothing behind.
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
  const auto target = dir_ / name;
  const auto tmp = dir_ / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  written_.push_back(name);
}

void ArtifactWriter::csv(const std::string& name, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string s = "# config_hash=" + hash_ + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += '\n';
  }
  write(name, s);
}

void ArtifactWriter::json(const std::string& name, nlohmann::json body) {
  body["config_hash"] = hash_;
  write(name, body.dump(2) + "\n");
}

void ArtifactWriter::trajectory(const std::string& name, const Trajectory& tr, const FlowProfile& flow,
                                double radius) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double v = flow.velocity(tr.t[k]);
    rows.push_back({num(tr.t[k]), num(v), num(tr.omega[k]), num(tr.omega[k] * radius / v), num(tr.u[k]),
                    num(tr.torque[k]), num(tr.power[k])});
  }
  csv(name, {"t", "v", "omega", "tsr", "u", "Q", "P"}, rows);
}

void ArtifactWriter::jsonl(const std::string& name, const std::string& lines) {
  write(name, nlohmann::json{{"config_hash", hash_}}.dump() + "\n" + lines);
}

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open artifact " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

nlohmann::json geometry_json(const BladeGeometry& g) {
  nlohmann::json j;
  j["hub_radius_m"] = g.hub_radius;
  j["tip_radius_m"] = g.tip_radius;
  j["num_blades"] = g.num_blades;
  j["chord_m"] = nlohmann::json::array();
  j["twist_deg"] = nlohmann::json::array();
  for (const auto& s : g.segments) {
    j["chord_m"].push_back(s.chord);
    j["twist_deg"].push_back(s.twist_deg);
  }
  return j;
}

std::string geometry_csv_text(const BladeGeometry& g) {
  std::ostringstream os;
  write_geometry_csv(os, g);
  return os.str();
}

nlohmann::json cp_curve_json(const CpCurve& cp) {
  nlohmann::json j;
  j["best_tsr"] = cp.best_tsr;
  j["best_cp"] = cp.best_cp;
  j["points"] = nlohmann::json::array();
  for (const auto& p : cp.points) {
    if (p.converged)
      j["points"].push_back({p.tsr, p.cp});
    else
      j["points"].push_back({p.tsr, nullptr});
  }
  return j;
}

nlohmann::json ccd_result_json(const CcdResult& r, const std::string& trajectory_file) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["gain"] = r.gain ? nlohmann::json(*r.gain) : nlohmann::json(nullptr);
  j["energy_J"] = r.energy;
  if (r.mode == ControlMode::Oloc) j["collocation_energy_J"] = r.collocation_energy;
  j["initial_omega"] = r.initial_omega;
  j["status"] = nlp::to_string(r.status);
  j["iterations"] = r.iterations;
  j["max_violation"] = r.max_violation;
  j["optimality"] = r.optimality;
  j["seed"] = r.seed;
  j["stall_events"] = r.trajectory.stall_times.size();
  j["geometry"] = geometry_json(r.geometry);
  j["geometry_csv"] = geometry_csv_text(r.geometry);
  j["trajectory_csv"] = trajectory_file;
  j["cp_curve"] = cp_curve_json(r.cp);
  if (r.schedule) j["schedule"] = {{"t", r.schedule->t}, {"u", r.schedule->u}};
  return j;
}

nlohmann::json sensitivity_json(const SensitivityReport& r) {
  nlohmann::json j;
  j["seeds"] = r.seeds;
  j["settings"] = {{"horizon", r.settings.horizon},
                   {"dt", r.settings.dt},
                   {"u_max", r.settings.u_max ? nlohmann::json(*r.settings.u_max) : nlohmann::json(nullptr)},
                   {"nu", r.settings.nu}};
  if (r.settings.sensor)
    j["settings"]["sensor"] = {{"snr_db", r.settings.sensor->snr_db}, {"cutoff_hz", r.settings.sensor->cutoff_hz}};
  j["types"] = nlohmann::json::array();
  for (std::size_t k = 0; k < r.kinds.size(); ++k) {
    nlohmann::json t;
    t["type"] = to_string(r.kinds[k]);
    t["ceiling_J"] = std::isnan(r.ceilings[k]) ? nlohmann::json(nullptr) : nlohmann::json(r.ceilings[k]);
    t["ceiling_status"] = r.ceiling_status[k];
    t["cells"] = nlohmann::json::array();
    for (const auto& c : r.cells) {
      if (c.kind != r.kinds[k]) continue;
      nlohmann::json cj;
      cj["controller"] = c.controller;
      cj["energy_J"] = std::isnan(c.energy) ? nlohmann::json(nullptr) : nlohmann::json(c.energy);
      cj["percent_of_ceiling"] = std::isnan(c.ratio) ? nlohmann::json(nullptr) : nlohmann::json(100.0 * c.ratio);
      cj["stalled"] = c.stalled;
      cj["seed_energies_J"] = c.seed_energies;
      std::vector<bool> stalled(c.seed_stalled.begin(), c.seed_stalled.end());
      cj["seed_stalled"] = stalled;
      if (!c.error.empty()) cj["error"] = c.error;
      t["cells"].push_back(cj);
    }
    j["types"].push_back(t);
  }
  return j;
}

}  // namespace hkt::cli
