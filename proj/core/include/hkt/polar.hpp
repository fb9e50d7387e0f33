#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hkt/dual.hpp"
#include "hkt/error.hpp"

namespace hkt {

struct PolarSample {
  double cl = 0.0;
  double cd = 0.0;
};

/// Lift/drag coefficients tabulated against angle of attack in degrees.
///
/// The grid is strictly ascending and spans the full [-180, 180] circle so
/// that lookups never extrapolate. Both interpolation rules pass through
/// the tabulated points; the monotone cubic (Fritsch-Carlson) one is C1 and
/// never overshoots the data, which keeps gradient-based design smooth.
class AirfoilPolar {
 public:
  enum class Interpolation { Linear, MonotoneCubic };

  AirfoilPolar(std::vector<double> alpha_deg, std::vector<double> cl, std::vector<double> cd,
               Interpolation rule = Interpolation::Linear);

  std::span<const double> alpha_deg() const { return alpha_; }
  std::span<const double> cl() const { return cl_; }
  std::span<const double> cd() const { return cd_; }
  std::size_t size() const { return alpha_.size(); }
  Interpolation rule() const { return rule_; }
  /// Node slopes of the cubic rule, per degree.
  std::span<const double> cl_slope() const { return dcl_; }
  std::span<const double> cd_slope() const { return dcd_; }

  /// Index i of the interval [alpha_i, alpha_{i+1}] holding `alpha_deg`.
  std::size_t interval(double alpha_deg) const;

 private:
  std::vector<double> alpha_, cl_, cd_;
  std::vector<double> dcl_, dcd_;
  Interpolation rule_;
};

/// Lookup under the polar's interpolation rule. Throws DomainError outside [-180, 180].
PolarSample interpolate_polar(const AirfoilPolar& polar, double alpha_deg);

/// Generic version used by the differentiated BEM equations (T = double or Dual).
template <class T>
void interpolate_polar(const AirfoilPolar& polar, const T& alpha_deg, T& cl, T& cd) {
  const double a = value_of(alpha_deg);
  if (!(a >= -180.0 && a <= 180.0)) throw DomainError("angle of attack outside [-180, 180] deg");
  const std::size_t i = polar.interval(a);
  const auto x = polar.alpha_deg();
  const double h = x[i + 1] - x[i];
  const T s = (alpha_deg - x[i]) / h;
  const auto cl_y = polar.cl(), cd_y = polar.cd();
  if (polar.rule() == AirfoilPolar::Interpolation::Linear) {
    cl = cl_y[i] + s * (cl_y[i + 1] - cl_y[i]);
    cd = cd_y[i] + s * (cd_y[i + 1] - cd_y[i]);
    return;
  }
  const T s2 = s * s;
  const T s3 = s2 * s;
  const T h00 = 2.0 * s3 - 3.0 * s2 + 1.0, h10 = s3 - 2.0 * s2 + s, h01 = 3.0 * s2 - 2.0 * s3, h11 = s3 - s2;
  const auto dcl = polar.cl_slope(), dcd = polar.cd_slope();
  cl = h00 * cl_y[i] + h10 * (h * dcl[i]) + h01 * cl_y[i + 1] + h11 * (h * dcl[i + 1]);
  cd = h00 * cd_y[i] + h10 * (h * dcd[i]) + h01 * cd_y[i + 1] + h11 * (h * dcd[i + 1]);
}

/// Parameters of the built-in cambered-foil polar.
struct DefaultPolarParameters {
  double zero_lift_alpha_deg = -4.0;
  double cl_max = 1.6;
  double stall_alpha_deg = 14.0;
  double negative_stall_alpha_deg = -14.0;
  double cd_min = 0.008;
  double cd_lift_factor = 0.012;  // cd = cd_min + factor * cl^2 while attached
  double cd_max = 2.0;            // flat-plate drag at 90 deg
  double grid_step_deg = 0.25;
};

/// Continuous definition of the default polar (thin-airfoil lift slope with a
/// cl_max cap, Viterna post-stall to +-90 deg, flat plate beyond).
PolarSample default_polar_value(double alpha_deg, const DefaultPolarParameters& p = {});

/// Default polar sampled on a uniform grid over [-180, 180].
AirfoilPolar default_polar(const DefaultPolarParameters& p = {},
                           AirfoilPolar::Interpolation rule = AirfoilPolar::Interpolation::MonotoneCubic);

/// CSV with header `alpha_deg,cl,cd`; '#' lines are comments.
AirfoilPolar parse_polar_csv(std::istream& in,
                             AirfoilPolar::Interpolation rule = AirfoilPolar::Interpolation::Linear);
AirfoilPolar read_polar_csv(const std::filesystem::path& path,
                            AirfoilPolar::Interpolation rule = AirfoilPolar::Interpolation::Linear);
void write_polar_csv(std::ostream& out, const AirfoilPolar& polar);

}  // namespace hkt
