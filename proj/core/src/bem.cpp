#include "hkt/bem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hkt/dual.hpp"
#include "hkt/error.hpp"
#include "roots.hpp"

namespace hkt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kPhiEps = 1e-6;
constexpr double kPhiTol = 1e-12;
constexpr int kMaxIter = 200;

using std::abs;
using std::acos;
using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

template <class T>
struct Equations {
  T residual, a, ap, loss, dq, dt;
};

// Ning's single-residual BEM formulation with Prandtl tip/hub losses and the
// Buhl high-induction branch.
template <class T>
Equations<T> section_equations(const T& phi, const T& chord, const T& twist_deg, const T& omega, const T& v,
                               const BladeSegment& seg, const RotorConstants& rc, const AirfoilPolar& polar,
                               double rho) {
  const double r = seg.r_mid;
  const double blades = rc.num_blades;
  const T sphi = sin(phi);
  const T cphi = cos(phi);

  T alpha_deg = phi * (1.0 / kDeg) - twist_deg;
  if (value_of(alpha_deg) > 180.0) alpha_deg = alpha_deg - 360.0;
  if (value_of(alpha_deg) < -180.0) alpha_deg = alpha_deg + 360.0;
  T cl, cd;
  interpolate_polar(polar, alpha_deg, cl, cd);

  const T cn = cl * cphi + cd * sphi;
  const T ct = cl * sphi - cd * cphi;
  const T sigma = blades * chord / (2.0 * kPi * r);

  const T asphi = abs(sphi);
  const T f_tip = (blades / 2.0) * (rc.tip_radius - r) / (r * asphi);
  const T f_hub = (blades / 2.0) * (r - rc.hub_radius) / (rc.hub_radius * asphi);
  const T loss = (2.0 / kPi) * acos(exp(-f_tip)) * ((2.0 / kPi) * acos(exp(-f_hub)));

  const T k = sigma * cn / (4.0 * loss * sphi * sphi);
  T kp = sigma * ct / (4.0 * loss * sphi * cphi);

  const bool momentum_region = value_of(phi) > 0.0;
  T a;
  if (momentum_region) {
    if (value_of(k) <= 2.0 / 3.0) {
      a = k / (1.0 + k);
    } else {
      const T g1 = 2.0 * loss * k - (10.0 / 9.0 - loss);
      const T g2 = 2.0 * loss * k - loss * (4.0 / 3.0 - loss);
      const T g3 = 2.0 * loss * k - (25.0 / 9.0 - 2.0 * loss);
      if (std::abs(value_of(g3)) < 1e-6)
        a = 1.0 - 1.0 / (2.0 * sqrt(g2));
      else
        a = (g1 - sqrt(g2)) / g3;
    }
  } else {
    a = value_of(k) > 1.0 ? k / (k - 1.0) : T(0.0);
    kp = -kp;
  }
  const T ap = kp / (1.0 - kp);

  const T vx = v;
  const T vy = omega * r;
  const T inv_lambda = vx / vy;
  T residual = momentum_region ? sphi / (1.0 - a) - cphi * inv_lambda * (1.0 - kp)
                               : sphi * (1.0 - k) - cphi * inv_lambda * (1.0 - kp);

  const T ux = vx * (1.0 - a);
  const T uy = vy * (1.0 + ap);
  const T w2 = ux * ux + uy * uy;
  const T q = 0.5 * rho * w2 * chord;
  return {residual, a, ap, loss, blades * q * ct * r * seg.dr, blades * q * cn * seg.dr};
}

double residual_at(double phi, const BladeSegment& seg, const RotorConstants& rc, double v, double omega,
                   const AirfoilPolar& polar, double rho) {
  return section_equations<double>(phi, seg.chord, seg.twist_deg, omega, v, seg, rc, polar, rho).residual;
}

double solve_phi(const BladeSegment& seg, const RotorConstants& rc, double v, double omega,
                 const AirfoilPolar& polar, double rho) {
  auto f = [&](double phi) { return residual_at(phi, seg, rc, v, omega, polar, rho); };
  const double brackets[3][2] = {{kPhiEps, kPi / 2.0}, {-kPi / 4.0, -kPhiEps}, {kPi / 2.0, kPi - kPhiEps}};
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  for (const auto& br : brackets) {
    lo = br[0];
    hi = br[1];
    flo = f(lo);
    fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::isfinite(flo) && std::isfinite(fhi) && (flo < 0.0) != (fhi < 0.0)) {
      double phi = detail::brent(f, lo, hi, flo, fhi, kPhiTol, kMaxIter);
      // Newton polish on the differentiated residual.
      for (int i = 0; i < 3; ++i) {
        const auto eq = section_equations<Dual<1>>(Dual<1>::variable(phi, 0), seg.chord, seg.twist_deg, omega, v,
                                                   seg, rc, polar, rho);
        if (eq.residual.v == 0.0 || eq.residual.d[0] == 0.0) break;
        const double next = phi - eq.residual.v / eq.residual.d[0];
        if (!(next > lo && next < hi)) break;
        if (!(std::abs(f(next)) < std::abs(eq.residual.v))) break;
        phi = next;
      }
      return phi;
    }
  }
  throw BracketFailure("BEM residual has no sign change (r=" + std::to_string(seg.r_mid) +
                           ", v=" + std::to_string(v) + ", omega=" + std::to_string(omega) + ")",
                       lo, hi, flo, fhi);
}

void check_operating_point(double v, double omega) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("inflow speed must be positive");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("rotational speed must be >= 0");
}

}  // namespace

SectionLoads section_state_at(const BladeSegment& seg, const RotorConstants& rc, double v, double omega,
                              const AirfoilPolar& polar, const FluidEnvironment& fluid, double phi) {
  check_operating_point(v, omega);
  const double w = std::max(omega, kOmegaFloor);
  const auto eq = section_equations<double>(phi, seg.chord, seg.twist_deg, w, v, seg, rc, polar, fluid.density);
  return {eq.a, eq.ap, phi, eq.loss, eq.residual, eq.dq, eq.dt};
}

SectionLoads solve_bem_section(const BladeSegment& seg, const RotorConstants& rc, double v, double omega,
                               const AirfoilPolar& polar, const FluidEnvironment& fluid,
                               SectionSensitivity* sensitivity) {
  check_operating_point(v, omega);
  const bool floored = omega < kOmegaFloor;
  const double w = floored ? kOmegaFloor : omega;
  const double rho = fluid.density;
  const double phi = solve_phi(seg, rc, v, w, polar, rho);

  if (!sensitivity) {
    const auto eq = section_equations<double>(phi, seg.chord, seg.twist_deg, w, v, seg, rc, polar, rho);
    return {eq.a, eq.ap, phi, eq.loss, eq.residual, eq.dq, eq.dt};
  }

  using D = Dual<5>;  // phi, chord, twist, omega, v
  const auto eq = section_equations<D>(D::variable(phi, 0), D::variable(seg.chord, 1),
                                       D::variable(seg.twist_deg, 2), D::variable(w, 3), D::variable(v, 4), seg,
                                       rc, polar, rho);
  const double r_phi = eq.residual.d[0];
  auto total = [&](std::size_t p) {
    const double dphi = r_phi != 0.0 ? -eq.residual.d[p] / r_phi : 0.0;
    return eq.dq.d[p] + eq.dq.d[0] * dphi;
  };
  sensitivity->dq_dchord = total(1);
  sensitivity->dq_dtwist_deg = total(2);
  sensitivity->dq_domega = floored ? 0.0 : total(3);
  sensitivity->dq_dv = total(4);
  return {eq.a.v, eq.ap.v, phi, eq.loss.v, eq.residual.v, eq.dq.v, eq.dt.v};
}

double rotor_torque(const BladeGeometry& g, double v, double omega, const AirfoilPolar& polar,
                    const FluidEnvironment& fluid) {
  const RotorConstants rc = RotorConstants::of(g);
  double q = 0.0;
  for (const auto& seg : g.segments) q += solve_bem_section(seg, rc, v, omega, polar, fluid).dQ;
  return q;
}

void rotor_torque_gradient(const BladeGeometry& g, double v, double omega, const AirfoilPolar& polar,
                           const FluidEnvironment& fluid, TorqueGradient& out) {
  const RotorConstants rc = RotorConstants::of(g);
  out.torque = out.dq_domega = out.dq_dv = 0.0;
  out.dq_dchord.assign(g.size(), 0.0);
  out.dq_dtwist_deg.assign(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    SectionSensitivity s;
    out.torque += solve_bem_section(g.segments[i], rc, v, omega, polar, fluid, &s).dQ;
    out.dq_domega += s.dq_domega;
    out.dq_dv += s.dq_dv;
    out.dq_dchord[i] = s.dq_dchord;
    out.dq_dtwist_deg[i] = s.dq_dtwist_deg;
  }
}

double power_coefficient(const BladeGeometry& g, const AirfoilPolar& polar, const FluidEnvironment& fluid,
                         double tsr, double v_ref) {
  if (!(tsr > 0.0)) throw DomainError("tip speed ratio must be positive");
  const double omega = tsr * v_ref / g.tip_radius;
  const double q = rotor_torque(g, v_ref, omega, polar, fluid);
  const double area = kPi * g.tip_radius * g.tip_radius;
  return q * omega / (0.5 * fluid.density * area * v_ref * v_ref * v_ref);
}

std::vector<double> tsr_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo) || !(lo > 0.0)) throw DomainError("TSR grid needs 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

CpCurve cp_curve(const BladeGeometry& g, const AirfoilPolar& polar, const FluidEnvironment& fluid,
                 std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("TSR grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("TSR grid must be ascending");
  }
  CpCurve curve;
  std::size_t best = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CpPoint p{grid[i], 0.0, true};
    try {
      p.cp = power_coefficient(g, polar, fluid, grid[i]);
    } catch (const SolverFailure&) {
      p.converged = false;
    }
    if (p.converged && (best == grid.size() || p.cp > curve.points[best].cp)) best = i;
    curve.points.push_back(p);
  }
  if (best == grid.size()) return curve;

  double lo = grid[best > 0 ? best - 1 : best];
  double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  curve.best_tsr = grid[best];
  curve.best_cp = curve.points[best].cp;
  if (hi > lo) {
    auto cp = [&](double x) {
      try {
        return power_coefficient(g, polar, fluid, x);
      } catch (const SolverFailure&) {
        return -std::numeric_limits<double>::infinity();
      }
    };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    double f1 = cp(x1), f2 = cp(x2);
    while (hi - lo > 1e-9 * hi) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - ratio * (hi - lo);
        f1 = cp(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + ratio * (hi - lo);
        f2 = cp(x2);
      }
    }
    const double x = 0.5 * (lo + hi);
    const double fx = cp(x);
    if (fx > curve.best_cp) {
      curve.best_tsr = x;
      curve.best_cp = fx;
    }
  }
  return curve;
}

RotorModel::RotorModel(BladeGeometry geometry, std::shared_ptr<const AirfoilPolar> polar, FluidEnvironment fluid)
    : geometry_(std::move(geometry)), polar_(std::move(polar)), fluid_(fluid) {
  if (!polar_) throw DomainError("rotor model needs a polar");
  if (!(fluid_.density > 0.0)) throw DomainError("fluid density must be positive");
  geometry_.validate();
}

double RotorModel::swept_area() const { return kPi * geometry_.tip_radius * geometry_.tip_radius; }

}  // namespace hkt
