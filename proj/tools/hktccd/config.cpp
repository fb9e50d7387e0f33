#include "config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "hkt/error.hpp"

namespace hkt::cli {

namespace {

enum class Kind { Number, Integer, Bool, String, NumberOrNull, StringArray, IntArray, Object };

struct Field {
  Kind kind;
  std::map<std::string, Field> children;  // for Object
};

Field leaf(Kind k) { return Field{k, {}}; }
Field object(std::map<std::string, Field> children) { return Field{Kind::Object, std::move(children)}; }

const Field& schema() {
  static const Field root = object({
      {"campaign", leaf(Kind::String)},
      {"scenario", leaf(Kind::Integer)},
      {"geometry", leaf(Kind::String)},
      {"polar", leaf(Kind::String)},
      {"polar_interpolation", leaf(Kind::String)},
      {"flow", object({{"type", leaf(Kind::String)},
                       {"base", leaf(Kind::Number)},
                       {"step", leaf(Kind::Number)},
                       {"center", leaf(Kind::Number)},
                       {"amplitude", leaf(Kind::Number)},
                       {"frequency", leaf(Kind::Number)},
                       {"phase", leaf(Kind::Number)},
                       {"mean", leaf(Kind::Number)},
                       {"velocity", leaf(Kind::Number)}})},
      {"horizon", leaf(Kind::Number)},
      {"dt", leaf(Kind::Number)},
      {"u_max", leaf(Kind::NumberOrNull)},
      {"nu", leaf(Kind::Number)},
      {"controllers", leaf(Kind::StringArray)},
      {"include_baseline", leaf(Kind::Bool)},
      {"solver", object({{"feasibility_tol", leaf(Kind::Number)},
                         {"optimality_tol", leaf(Kind::Number)},
                         {"max_iter", leaf(Kind::Integer)},
                         {"max_outer", leaf(Kind::Integer)},
                         {"restarts", leaf(Kind::Integer)},
                         {"log", leaf(Kind::Bool)}})},
      {"collocation", object({{"segments", leaf(Kind::Integer)}, {"control_smoothing", leaf(Kind::Number)}})},
      {"fluid", object({{"density", leaf(Kind::Number)}})},
      {"material", object({{"density", leaf(Kind::Number)},
                           {"thickness_ratio", leaf(Kind::Number)},
                           {"area_factor", leaf(Kind::Number)}})},
      {"sensor", object({{"snr_db", leaf(Kind::Number)}, {"cutoff_hz", leaf(Kind::Number)}})},
      {"seeds", leaf(Kind::IntArray)},
      {"uncertainty", leaf(Kind::StringArray)},
      {"output_dir", leaf(Kind::String)},
      {"seed", leaf(Kind::Integer)},
      {"simulate", object({{"law", leaf(Kind::String)},
                           {"gain", leaf(Kind::NumberOrNull)},
                           {"initial_omega", leaf(Kind::NumberOrNull)},
                           {"sensor", leaf(Kind::Bool)}})},
      {"bem", object({{"tsr_min", leaf(Kind::Number)}, {"tsr_max", leaf(Kind::Number)}, {"points", leaf(Kind::Integer)}})},
  });
  return root;
}

bool is_integer(const Json& j) { return j.is_number_integer() || (j.is_number_float() && j.get<double>() == std::floor(j.get<double>())); }

void check(const Json& j, const Field& f, const std::string& path) {
  auto fail = [&](const char* what) { throw ConfigError("config key '" + path + "' must be " + what); };
  switch (f.kind) {
    case Kind::Number:
      if (!j.is_number()) fail("a number");
      break;
    case Kind::Integer:
      if (!j.is_number() || !is_integer(j)) fail("an integer");
      break;
    case Kind::Bool:
      if (!j.is_boolean()) fail("a boolean");
      break;
    case Kind::String:
      if (!j.is_string()) fail("a string");
      break;
    case Kind::NumberOrNull:
      if (!j.is_number() && !j.is_null()) fail("a number or null");
      break;
    case Kind::StringArray:
      if (!j.is_array()) fail("an array of strings");
      for (const auto& e : j)
        if (!e.is_string()) fail("an array of strings");
      break;
    case Kind::IntArray:
      if (!j.is_array()) fail("an array of non-negative integers");
      for (const auto& e : j)
        if (!e.is_number() || !is_integer(e) || e.get<double>() < 0) fail("an array of non-negative integers");
      break;
    case Kind::Object:
      if (!j.is_object()) fail("an object");
      for (const auto& [key, value] : j.items()) {
        const auto it = f.children.find(key);
        const std::string sub = path.empty() ? key : path + "." + key;
        if (it == f.children.end()) throw ConfigError("unknown config key '" + sub + "'");
        check(value, it->second, sub);
      }
      break;
  }
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) {
    if (key == "flow") {
      into[key] = value;  // a flow block replaces the default profile wholesale
    } else if (value.is_object() && into.contains(key) && into[key].is_object()) {
      merge(into[key], value);
    } else {
      into[key] = value;
    }
  }
}

FlowProfile parse_flow(const Json& f) {
  if (!f.contains("type")) throw ConfigError("config key 'flow.type' is required");
  const std::string type = f["type"];
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : f.items()) {
      bool ok = key == "type";
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) throw ConfigError("config key 'flow." + key + "' does not apply to flow type '" + type + "'");
    }
  };
  auto num = [&](const char* key, double fallback) { return f.contains(key) ? f[key].get<double>() : fallback; };
  if (type == "step") {
    allow({"base", "step", "center"});
    const SmoothedStep d;
    return SmoothedStep{num("base", d.base), num("step", d.step), num("center", d.center)};
  }
  if (type == "sinusoid") {
    allow({"amplitude", "frequency", "phase", "mean"});
    const Sinusoid d;
    return Sinusoid{num("amplitude", d.amplitude), num("frequency", d.frequency), num("phase", d.phase),
                    num("mean", d.mean)};
  }
  if (type == "constant") {
    allow({"velocity"});
    if (!f.contains("velocity")) throw ConfigError("config key 'flow.velocity' is required for a constant flow");
    return FlowProfile::constant(f["velocity"].get<double>());
  }
  throw ConfigError("config key 'flow.type' must be step, sinusoid or constant");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::string number_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Json scenario_defaults(int scenario) {
  Json j = {
      {"campaign", "hkt"},
      {"scenario", scenario},
      {"geometry", "baseline"},
      {"polar", "default"},
      {"polar_interpolation", "cubic"},
      {"u_max", nullptr},
      {"nu", 0.001},
      {"dt", 0.01},
      {"controllers", {"oloc", "quadratic", "linear"}},
      {"include_baseline", true},
      {"solver", {{"feasibility_tol", 1e-6}, {"optimality_tol", 1e-5}, {"max_iter", 20000}, {"max_outer", 40},
                  {"restarts", 3}, {"log", false}}},
      {"collocation", {{"segments", 50}, {"control_smoothing", 0.1}}},
      {"fluid", {{"density", 1000.0}}},
      {"material", {{"density", 2700.0}, {"thickness_ratio", 0.15}, {"area_factor", 0.6}}},
      {"sensor", {{"snr_db", 20.0}, {"cutoff_hz", 0.5}}},
      {"seeds", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}},
      {"uncertainty", {"A", "B", "C"}},
      {"output_dir", "hktccd-out"},
      {"seed", 0},
      {"simulate", {{"law", "quadratic"}, {"gain", nullptr}, {"initial_omega", nullptr}, {"sensor", false}}},
      {"bem", {{"tsr_min", 1.0}, {"tsr_max", 12.0}, {"points", 45}}},
  };
  if (scenario == 1) {
    j["flow"] = {{"type", "step"}, {"base", 1.2}, {"step", 0.2}, {"center", 30.0}};
    j["horizon"] = 60.0;
  } else if (scenario == 2) {
    j["flow"] = {{"type", "sinusoid"}, {"amplitude", 0.2}, {"frequency", 0.25}, {"phase", 0.0}, {"mean", 1.5}};
    j["horizon"] = 50.0;
  } else {
    throw ConfigError("scenario must be 1 (step inflow) or 2 (sinusoidal inflow)");
  }
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

std::string hash_json(const Json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path output_root() {
  if (const char* root = std::getenv("HKTCCD_OUTPUT_ROOT"); root && *root) return root;
  return std::filesystem::current_path();
}

CampaignConfig load_config(const Json& file, const Overrides& o, const std::filesystem::path& base_dir) {
  if (!file.is_null()) check(file, schema(), "");
  int scenario = 2;
  if (file.is_object() && file.contains("scenario")) scenario = file["scenario"].get<int>();
  if (o.scenario) scenario = *o.scenario;

  Json j = scenario_defaults(scenario);
  if (file.is_object()) merge(j, file);
  j["scenario"] = scenario;
  if (o.u_max) j["u_max"] = *o.u_max;
  if (o.no_constraint) j["u_max"] = nullptr;
  if (o.output_dir) j["output_dir"] = *o.output_dir;
  if (o.seed) j["seed"] = *o.seed;
  if (o.horizon) j["horizon"] = *o.horizon;
  if (o.dt) j["dt"] = *o.dt;
  if (o.segments) j["collocation"]["segments"] = *o.segments;
  if (o.law) j["simulate"]["law"] = *o.law;
  if (o.gain) j["simulate"]["gain"] = *o.gain;
  if (!o.controllers.empty()) j["controllers"] = o.controllers;
  check(j, schema(), "");

  CampaignConfig c;
  c.campaign = j["campaign"];
  require(!c.campaign.empty() && c.campaign.find_first_of("/\\ ") == std::string::npos,
          "campaign name must be non-empty without spaces or slashes");
  c.scenario = scenario;
  auto resolve = [&](const std::string& name) {
    std::filesystem::path p(name);
    return p.is_relative() && !base_dir.empty() ? (base_dir / p).string() : name;
  };
  c.geometry = j["geometry"] == "baseline" ? std::string("baseline") : resolve(j["geometry"]);
  c.polar = j["polar"] == "default" ? std::string("default") : resolve(j["polar"]);
  const std::string interp = j["polar_interpolation"];
  require(interp == "linear" || interp == "cubic", "polar_interpolation must be linear or cubic");
  c.polar_interpolation =
      interp == "linear" ? AirfoilPolar::Interpolation::Linear : AirfoilPolar::Interpolation::MonotoneCubic;
  c.flow = parse_flow(j["flow"]);
  c.horizon = j["horizon"];
  c.dt = j["dt"];
  require(c.horizon > 0.0 && c.dt > 0.0, "horizon and dt must be positive");
  if (!j["u_max"].is_null()) {
    c.u_max = j["u_max"].get<double>();
    require(*c.u_max > 0.0, "u_max must be positive");
  }
  c.nu = j["nu"];
  require(c.nu > 0.0, "nu must be positive");
  for (const auto& m : j["controllers"]) c.controllers.push_back(parse_control_mode(m));
  require(!c.controllers.empty(), "controllers must list at least one mode");
  c.include_baseline = j["include_baseline"];

  const Json& s = j["solver"];
  c.solver.feasibility_tol = s["feasibility_tol"];
  c.solver.optimality_tol = s["optimality_tol"];
  c.solver.max_iter = s["max_iter"];
  c.solver.max_outer = s["max_outer"];
  c.solver.restarts = s["restarts"];
  c.solver_log = s["log"];
  require(c.solver.feasibility_tol > 0.0 && c.solver.optimality_tol > 0.0, "solver tolerances must be positive");
  require(c.solver.max_iter > 0 && c.solver.max_outer > 0 && c.solver.restarts >= 0,
          "solver iteration limits must be positive");

  c.segments = j["collocation"]["segments"];
  c.control_smoothing = j["collocation"]["control_smoothing"];
  require(c.segments >= 1, "collocation.segments must be at least 1");
  require(c.control_smoothing >= 0.0, "collocation.control_smoothing must be non-negative");
  c.fluid.density = j["fluid"]["density"];
  require(c.fluid.density > 0.0, "fluid.density must be positive");
  c.material.density = j["material"]["density"];
  c.material.thickness_ratio = j["material"]["thickness_ratio"];
  c.material.area_factor = j["material"]["area_factor"];
  require(c.material.density > 0.0, "material.density must be positive");
  require(c.material.thickness_ratio > 0.0 && c.material.thickness_ratio < 1.0,
          "material.thickness_ratio must lie in (0, 1)");
  require(c.material.area_factor > 0.0 && c.material.area_factor < 1.0, "material.area_factor must lie in (0, 1)");
  c.sensor.snr_db = j["sensor"]["snr_db"];
  c.sensor.cutoff_hz = j["sensor"]["cutoff_hz"];
  c.sensor.validate(c.dt);
  for (const auto& seed : j["seeds"]) c.seeds.push_back(seed.get<std::uint64_t>());
  require(!c.seeds.empty(), "seeds must not be empty");
  for (const auto& k : j["uncertainty"]) c.uncertainty.push_back(parse_uncertainty(k));
  c.seed = j["seed"].get<std::uint64_t>();
  c.solver.seed = c.seed;

  const Json& sim = j["simulate"];
  c.simulate.law = sim["law"];
  require(c.simulate.law == "quadratic" || c.simulate.law == "linear", "simulate.law must be quadratic or linear");
  if (!sim["gain"].is_null()) {
    c.simulate.gain = sim["gain"].get<double>();
    require(*c.simulate.gain >= 0.0, "simulate.gain must be non-negative");
  }
  if (!sim["initial_omega"].is_null()) c.simulate.initial_omega = sim["initial_omega"].get<double>();
  c.simulate.sensor = sim["sensor"];

  c.tsr_min = j["bem"]["tsr_min"];
  c.tsr_max = j["bem"]["tsr_max"];
  c.tsr_points = j["bem"]["points"];
  require(c.tsr_min > 0.0 && c.tsr_max > c.tsr_min && c.tsr_points >= 2, "bem TSR grid must be positive ascending");

  std::filesystem::path out = j["output_dir"].get<std::string>();
  c.output_dir = out.is_relative() ? output_root() / out : out;
  c.flow.validate(c.horizon);

  c.effective = j;
  Json hashed = j;
  hashed.erase("output_dir");
  c.hash = hash_json(hashed);
  return c;
}

std::string CampaignConfig::tag() const {
  std::string t = campaign + "_s" + std::to_string(scenario);
  if (u_max) t += "_u" + number_tag(*u_max);
  return t;
}

RotorModel CampaignConfig::rotor() const {
  BladeGeometry g = geometry == "baseline" ? baseline_geometry() : read_geometry_csv(geometry);
  std::shared_ptr<const AirfoilPolar> p;
  if (polar == "default")
    p = std::make_shared<const AirfoilPolar>(default_polar({}, polar_interpolation));
  else
    p = std::make_shared<const AirfoilPolar>(read_polar_csv(polar, polar_interpolation));
  return RotorModel(std::move(g), std::move(p), fluid);
}

CcdSpec CampaignConfig::ccd_spec(ControlMode mode) const {
  CcdSpec s;
  s.mode = mode;
  s.flow = flow;
  s.horizon = horizon;
  s.dt = dt;
  s.u_max = u_max;
  s.nu = nu;
  s.initial_geometry = rotor().geometry();
  s.material = material;
  s.segments = segments;
  s.control_smoothing = control_smoothing;
  s.solver = solver;
  s.seed = seed;
  return s;
}

}  // namespace hkt::cli
