#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hkt/geometry.hpp"
#include "hkt/polar.hpp"

namespace hkt {

/// Rotor-level constants a single blade section needs.
struct RotorConstants {
  double hub_radius = 0.0;
  double tip_radius = 0.0;
  int num_blades = 3;

  static RotorConstants of(const BladeGeometry& g) { return {g.hub_radius, g.tip_radius, g.num_blades}; }
};

/// Converged state of one annular blade element.
struct SectionLoads {
  double a = 0.0;         // axial induction
  double a_tan = 0.0;     // tangential induction
  double phi = 0.0;       // inflow angle, rad
  double loss = 1.0;      // Prandtl tip/hub loss factor F
  double residual = 0.0;  // BEM residual at phi
  double dQ = 0.0;        // torque contribution, N m
  double dT = 0.0;        // thrust contribution, N
};

/// Total derivatives of a converged section torque (phi re-solved implicitly).
struct SectionSensitivity {
  double dq_domega = 0.0;
  double dq_dv = 0.0;
  double dq_dchord = 0.0;
  double dq_dtwist_deg = 0.0;
};

/// Rotational speeds below this are evaluated at the floor (TSR singularity).
inline constexpr double kOmegaFloor = 1e-3;

/// Explicit section equations evaluated at a given inflow angle, without
/// solving for it. Used by the root finder and by brute-force oracles.
SectionLoads section_state_at(const BladeSegment& seg, const RotorConstants& rotor, double v, double omega,
                              const AirfoilPolar& polar, const FluidEnvironment& fluid, double phi);

/// Solves the BEM balance for one section. Throws BracketFailure when no
/// bracket holds a sign change of the residual.
SectionLoads solve_bem_section(const BladeSegment& seg, const RotorConstants& rotor, double v, double omega,
                               const AirfoilPolar& polar, const FluidEnvironment& fluid,
                               SectionSensitivity* sensitivity = nullptr);

/// Sum of section torques, N m.
double rotor_torque(const BladeGeometry& g, double v, double omega, const AirfoilPolar& polar,
                    const FluidEnvironment& fluid);

struct TorqueGradient {
  double torque = 0.0;
  double dq_domega = 0.0;
  double dq_dv = 0.0;
  std::vector<double> dq_dchord;
  std::vector<double> dq_dtwist_deg;
};

void rotor_torque_gradient(const BladeGeometry& g, double v, double omega, const AirfoilPolar& polar,
                           const FluidEnvironment& fluid, TorqueGradient& out);

/// Power coefficient Q*omega / (0.5 rho pi R^2 v^3) at tip speed ratio `tsr`.
double power_coefficient(const BladeGeometry& g, const AirfoilPolar& polar, const FluidEnvironment& fluid,
                         double tsr, double v_ref = 1.0);

struct CpPoint {
  double tsr = 0.0;
  double cp = 0.0;
  bool converged = true;  // false marks a gap where the section solver failed
};

struct CpCurve {
  std::vector<CpPoint> points;
  double best_tsr = 0.0;  // refined argmax
  double best_cp = 0.0;
};

/// Cp over an ascending positive TSR grid. The argmax is refined by
/// golden-section search between the neighbours of the best grid point.
CpCurve cp_curve(const BladeGeometry& g, const AirfoilPolar& polar, const FluidEnvironment& fluid,
                 std::span<const double> tsr_grid);

/// Evenly spaced TSR grid [lo, hi] with `n` points.
std::vector<double> tsr_grid(double lo, double hi, std::size_t n);

/// Geometry, polar and fluid bundled for repeated torque queries.
class RotorModel {
 public:
  RotorModel(BladeGeometry geometry, std::shared_ptr<const AirfoilPolar> polar, FluidEnvironment fluid = {});

  const BladeGeometry& geometry() const { return geometry_; }
  const AirfoilPolar& polar() const { return *polar_; }
  std::shared_ptr<const AirfoilPolar> polar_ptr() const { return polar_; }
  const FluidEnvironment& fluid() const { return fluid_; }

  double torque(double v, double omega) const { return rotor_torque(geometry_, v, omega, *polar_, fluid_); }
  void torque_gradient(double v, double omega, TorqueGradient& out) const {
    rotor_torque_gradient(geometry_, v, omega, *polar_, fluid_, out);
  }
  double swept_area() const;

  RotorModel with_geometry(BladeGeometry geometry) const { return {std::move(geometry), polar_, fluid_}; }

 private:
  BladeGeometry geometry_;
  std::shared_ptr<const AirfoilPolar> polar_;
  FluidEnvironment fluid_;
};

}  // namespace hkt
