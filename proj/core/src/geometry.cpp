#include "hkt/geometry.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "hkt/error.hpp"

namespace hkt {

namespace detail {
extern const char* const kBaselineGeometryCsv;
}

void BladeGeometry::validate(const GeometryBounds& bounds) const {
  if (num_blades < 1) throw DomainError("rotor needs at least one blade");
  if (!(hub_radius > 0.0) || !(tip_radius > hub_radius))
    throw DomainError("require tip_radius > hub_radius > 0");
  const double slack = 1e-12 * tip_radius;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    const std::string at = "segment " + std::to_string(i) + ": ";
    if (!(s.dr > 0.0)) throw DomainError(at + "dr must be positive");
    if (i == 0 && !(s.r_mid > hub_radius)) throw DomainError(at + "r_mid must exceed hub radius");
    if (i > 0 && !(s.r_mid > segments[i - 1].r_mid)) throw DomainError(at + "r_mid must increase");
    if (s.r_mid + 0.5 * s.dr > tip_radius + slack) throw DomainError(at + "segment extends past the tip");
    if (!(s.chord >= bounds.chord_min && s.chord <= bounds.chord_max))
      throw DomainError(at + "chord outside bounds");
    if (!(s.twist_deg >= bounds.twist_min_deg && s.twist_deg <= bounds.twist_max_deg))
      throw DomainError(at + "twist outside bounds");
  }
}

std::vector<double> BladeGeometry::design_vector() const {
  std::vector<double> x(2 * segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    x[i] = segments[i].chord;
    x[segments.size() + i] = segments[i].twist_deg;
  }
  return x;
}

void BladeGeometry::set_design_vector(std::span<const double> x) {
  if (x.size() != 2 * segments.size()) throw DomainError("design vector length mismatch");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    segments[i].chord = x[i];
    segments[i].twist_deg = x[segments.size() + i];
  }
}

BladeGeometry parse_geometry_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  if (table.header != std::vector<std::string>{"r_mid_m", "dr_m", "chord_m", "twist_deg"})
    throw DomainError("geometry CSV header must be r_mid_m,dr_m,chord_m,twist_deg");
  auto key = [&](const char* name) {
    auto it = table.preamble.find(name);
    if (it == table.preamble.end()) throw DomainError(std::string("geometry CSV missing ") + name);
    return std::stod(it->second);
  };
  BladeGeometry g;
  g.tip_radius = key("tip_radius_m");
  g.hub_radius = key("hub_radius_m");
  const double blades = key("num_blades");
  if (blades != std::floor(blades)) throw DomainError("num_blades must be an integer");
  g.num_blades = static_cast<int>(blades);
  for (const auto& row : table.rows) g.segments.push_back({row[0], row[1], row[2], row[3]});
  g.validate();
  return g;
}

BladeGeometry read_geometry_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open geometry file " + path.string());
  return parse_geometry_csv(in);
}

void write_geometry_csv(std::ostream& out, const BladeGeometry& g) {
  out << std::setprecision(17);
  out << "tip_radius_m=" << g.tip_radius << '\n'
      << "hub_radius_m=" << g.hub_radius << '\n'
      << "num_blades=" << g.num_blades << '\n'
      << "r_mid_m,dr_m,chord_m,twist_deg\n";
  for (const auto& s : g.segments) out << s.r_mid << ',' << s.dr << ',' << s.chord << ',' << s.twist_deg << '\n';
}

BladeGeometry baseline_geometry() {
  std::istringstream in(detail::kBaselineGeometryCsv);
  return parse_geometry_csv(in);
}

namespace {
void check_material(const MaterialProperties& m) {
  if (!(m.density > 0.0)) throw DomainError("material density must be positive");
  if (!(m.thickness_ratio > 0.0 && m.thickness_ratio < 1.0)) throw DomainError("thickness ratio must be in (0, 1)");
  if (!(m.area_factor > 0.0 && m.area_factor < 1.0)) throw DomainError("area factor must be in (0, 1)");
}
}  // namespace

double rotor_inertia(const BladeGeometry& g, const MaterialProperties& m) {
  check_material(m);
  double sum = 0.0;
  for (const auto& s : g.segments) {
    const double area = m.area_factor * s.chord * (m.thickness_ratio * s.chord);
    sum += m.density * area * s.dr * s.r_mid * s.r_mid;
  }
  return g.num_blades * sum;
}

std::vector<double> rotor_inertia_chord_gradient(const BladeGeometry& g, const MaterialProperties& m) {
  check_material(m);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& s = g.segments[i];
    out[i] = g.num_blades * m.density * m.area_factor * m.thickness_ratio * 2.0 * s.chord * s.dr * s.r_mid * s.r_mid;
  }
  return out;
}

}  // namespace hkt
