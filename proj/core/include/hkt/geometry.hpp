#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hkt {

struct BladeSegment {
  double r_mid = 0.0;      // m
  double dr = 0.0;         // m
  double chord = 0.0;      // m
  double twist_deg = 0.0;  // deg

  friend bool operator==(const BladeSegment&, const BladeSegment&) = default;
};

/// Chord/twist bounds of the plant design space.
struct GeometryBounds {
  double chord_min = 0.01;  // m
  double chord_max = 1.0;   // m
  double twist_min_deg = -30.0;
  double twist_max_deg = 30.0;
};

/// Per-segment blade description plus rotor-level constants.
struct BladeGeometry {
  double hub_radius = 0.0;  // m
  double tip_radius = 0.0;  // m
  int num_blades = 3;
  std::vector<BladeSegment> segments;

  std::size_t size() const { return segments.size(); }

  /// Throws DomainError when any structural invariant or design bound fails.
  void validate(const GeometryBounds& bounds = {}) const;

  /// Design vector layout: [chord_0..chord_{N-1}, twist_0..twist_{N-1}] (m, deg).
  std::vector<double> design_vector() const;
  void set_design_vector(std::span<const double> x);

  friend bool operator==(const BladeGeometry&, const BladeGeometry&) = default;
};

/// Scaled Bahaj rotor bundled with the library (R = 1.4 m, B = 3, nine segments).
BladeGeometry baseline_geometry();

/// Geometry CSV: `key=value` preamble (tip_radius_m, hub_radius_m, num_blades),
/// then header `r_mid_m,dr_m,chord_m,twist_deg` and one row per segment.
BladeGeometry parse_geometry_csv(std::istream& in);
BladeGeometry read_geometry_csv(const std::filesystem::path& path);
void write_geometry_csv(std::ostream& out, const BladeGeometry& geometry);

struct FluidEnvironment {
  double density = 1000.0;  // kg/m^3
};

/// Solid blade material model used for the rotational inertia.
struct MaterialProperties {
  double density = 2700.0;       // aluminium 6061, kg/m^3
  double thickness_ratio = 0.15;  // t/c
  double area_factor = 0.6;       // section area / (c * t)
};

/// I = B * sum rho_m * (k_A * c * (t/c) * c) * dr * r^2. Hub excluded.
double rotor_inertia(const BladeGeometry& geometry, const MaterialProperties& material = {});

/// dI/dc_i for every segment.
std::vector<double> rotor_inertia_chord_gradient(const BladeGeometry& geometry,
                                                 const MaterialProperties& material = {});

}  // namespace hkt
