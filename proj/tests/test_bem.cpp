#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hkt/bem.hpp"
#include "hkt/error.hpp"
#include "support.hpp"

namespace hkt {
namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
  std::size_t segment;
  double v, omega;
};

std::vector<Case> random_cases(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> seg(0, 8);
  std::uniform_real_distribution<double> v(1.0, 2.0), tsr(2.0, 11.0);
  std::vector<Case> out;
  for (int i = 0; i < n; ++i) {
    const double vi = v(rng);
    out.push_back({seg(rng), vi, tsr(rng) * vi / 1.4});
  }
  return out;
}

// Roots of the residual located by scanning phi on a fine grid and bisecting.
std::vector<double> dense_roots(const BladeSegment& seg, const RotorConstants& rc, double v, double omega,
                                const AirfoilPolar& polar) {
  const FluidEnvironment fluid;
  auto f = [&](double phi) { return section_state_at(seg, rc, v, omega, polar, fluid, phi).residual; };
  std::vector<double> roots;
  const int n = 20000;
  double a = 1e-6, fa = f(a);
  for (int k = 1; k <= n; ++k) {
    const double b = 1e-6 + (kPi / 2 - 2e-6) * k / n, fb = f(b);
    if (std::isfinite(fa) && std::isfinite(fb) && (fa < 0) != (fb < 0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi), fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

TEST(BemSection, ResidualVanishesAtTheSolution) {
  const auto rotor = test::baseline_rotor();
  const auto rc = RotorConstants::of(rotor.geometry());
  for (const auto& c : random_cases(200, 11)) {
    const auto s = solve_bem_section(rotor.geometry().segments[c.segment], rc, c.v, c.omega, rotor.polar(), {});
    EXPECT_LT(std::abs(s.residual), 1e-10);
  }
}

TEST(BemSection, AgreesWithDensePhiScanToFourDigits) {
  const auto rotor = test::baseline_rotor();
  const auto rc = RotorConstants::of(rotor.geometry());
  for (const auto& c : random_cases(20, 5)) {
    const auto& seg = rotor.geometry().segments[c.segment];
    const auto roots = dense_roots(seg, rc, c.v, c.omega, rotor.polar());
    ASSERT_FALSE(roots.empty());
    const auto s = solve_bem_section(seg, rc, c.v, c.omega, rotor.polar(), {});
    // The solver takes the first bracket, whose root is the unique one in (0, pi/2] here.
    ASSERT_EQ(roots.size(), 1u);
    const auto ref = section_state_at(seg, rc, c.v, c.omega, rotor.polar(), {}, roots.front());
    EXPECT_NEAR(s.phi, roots.front(), 1e-9);
    EXPECT_LT(test::relative(s.dQ, ref.dQ), 5e-5);
  }
}

TEST(BemSection, SatisfiesBladeElementMomentumBalance) {
  // Away from the high-induction branch the converged state equates
  // blade-element loads with annular momentum, and the inflow triangle closes.
  const auto rotor = test::baseline_rotor();
  const auto rc = RotorConstants::of(rotor.geometry());
  const double rho = 1000.0;
  int checked = 0;
  for (const auto& c : random_cases(100, 9)) {
    const auto& seg = rotor.geometry().segments[c.segment];
    const auto s = solve_bem_section(seg, rc, c.v, c.omega, rotor.polar(), {});
    EXPECT_NEAR(std::tan(s.phi), c.v * (1 - s.a) / (c.omega * seg.r_mid * (1 + s.a_tan)), 1e-9);
    if (s.a > 0.3 || s.a < 0.0) continue;
    const double dt_mom = 4 * kPi * seg.r_mid * rho * c.v * c.v * s.a * (1 - s.a) * s.loss * seg.dr;
    const double dq_mom = 4 * kPi * std::pow(seg.r_mid, 3) * rho * c.v * c.omega * s.a_tan * (1 - s.a) * s.loss * seg.dr;
    EXPECT_LT(test::relative(s.dT, dt_mom), 1e-8);
    EXPECT_LT(test::relative(s.dQ, dq_mom), 1e-8);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(BemRotor, PowerCoefficientRespectsBetz) {
  const auto rotor = test::baseline_rotor();
  for (double tsr : tsr_grid(1.0, 12.0, 111)) {
    const double cp = power_coefficient(rotor.geometry(), rotor.polar(), rotor.fluid(), tsr);
    EXPECT_LE(cp, 0.593) << tsr;
  }
}

TEST(BemRotor, TorqueScalesWithSpeedSquaredAtFixedTsr) {
  const auto rotor = test::baseline_rotor();
  for (double tsr : {3.0, 6.6, 9.0}) {
    const double q1 = rotor.torque(1.0, tsr / 1.4);
    for (double v : {0.7, 1.3, 2.1}) EXPECT_LT(test::relative(rotor.torque(v, tsr * v / 1.4), q1 * v * v), 1e-6);
  }
}

TEST(BemRotor, GradientMatchesCentralDifferences) {
  const auto rotor = test::baseline_rotor();
  const auto& g = rotor.geometry();
  for (const auto& c : random_cases(10, 21)) {
    TorqueGradient grad;
    rotor.torque_gradient(c.v, c.omega, grad);
    EXPECT_NEAR(grad.torque, rotor.torque(c.v, c.omega), 1e-12 * std::abs(grad.torque));
    const double h = 1e-6;
    const double fd_w = (rotor.torque(c.v, c.omega + h) - rotor.torque(c.v, c.omega - h)) / (2 * h);
    const double fd_v = (rotor.torque(c.v + h, c.omega) - rotor.torque(c.v - h, c.omega)) / (2 * h);
    EXPECT_NEAR(grad.dq_domega, fd_w, 1e-5 * std::max(1.0, std::abs(fd_w)));
    EXPECT_NEAR(grad.dq_dv, fd_v, 1e-5 * std::max(1.0, std::abs(fd_v)));
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto up = g, dn = g;
      up.segments[i].chord += h;
      dn.segments[i].chord -= h;
      const double fd_c = (rotor_torque(up, c.v, c.omega, rotor.polar(), {}) -
                           rotor_torque(dn, c.v, c.omega, rotor.polar(), {})) / (2 * h);
      EXPECT_NEAR(grad.dq_dchord[i], fd_c, 1e-5 * std::max(1.0, std::abs(fd_c)));
      up = g;
      dn = g;
      up.segments[i].twist_deg += 1e-5;
      dn.segments[i].twist_deg -= 1e-5;
      const double fd_t = (rotor_torque(up, c.v, c.omega, rotor.polar(), {}) -
                           rotor_torque(dn, c.v, c.omega, rotor.polar(), {})) / 2e-5;
      EXPECT_NEAR(grad.dq_dtwist_deg[i], fd_t, 1e-5 * std::max(1.0, std::abs(fd_t)));
    }
  }
}

TEST(BemRotor, CpCurveArgmaxIsRefined) {
  const auto rotor = test::baseline_rotor();
  const auto grid = tsr_grid(1.0, 12.0, 45);
  const auto cp = cp_curve(rotor.geometry(), rotor.polar(), rotor.fluid(), grid);
  ASSERT_EQ(cp.points.size(), 45u);
  for (const auto& p : cp.points) EXPECT_LE(p.cp, cp.best_cp + 1e-12);
  const double h = 1e-3;
  auto f = [&](double t) { return power_coefficient(rotor.geometry(), rotor.polar(), rotor.fluid(), t); };
  EXPECT_GE(cp.best_cp, f(cp.best_tsr + h) - 1e-12);
  EXPECT_GE(cp.best_cp, f(cp.best_tsr - h) - 1e-12);
  EXPECT_GT(cp.best_cp, 0.3);
}

TEST(BemRotor, RejectsNonPhysicalOperatingPoints) {
  const auto rotor = test::baseline_rotor();
  EXPECT_THROW(rotor.torque(0.0, 5.0), DomainError);
  EXPECT_THROW(rotor.torque(1.0, -1.0), DomainError);
  EXPECT_NO_THROW(rotor.torque(1.0, 0.0));
}

}  // namespace
}  // namespace hkt
