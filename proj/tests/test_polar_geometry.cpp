#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hkt/error.hpp"
#include "hkt/geometry.hpp"
#include "hkt/polar.hpp"

namespace hkt {
namespace {

using Rule = AirfoilPolar::Interpolation;

AirfoilPolar table(Rule rule) {
  // Coarse circle with a sharp peak to stress overshoot.
  return AirfoilPolar({-180, -90, -10, 0, 5, 10, 12, 20, 90, 180}, {0, -1, -0.6, 0.4, 1.0, 1.5, 1.6, 0.9, 0, 0},
                      {0.05, 2.0, 0.03, 0.01, 0.012, 0.02, 0.04, 0.3, 2.0, 0.05}, rule);
}

TEST(Polar, BothRulesPassThroughTheNodes) {
  for (Rule rule : {Rule::Linear, Rule::MonotoneCubic}) {
    const auto p = table(rule);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto s = interpolate_polar(p, p.alpha_deg()[i]);
      EXPECT_NEAR(s.cl, p.cl()[i], 1e-14);
      EXPECT_NEAR(s.cd, p.cd()[i], 1e-14);
    }
  }
}

TEST(Polar, MonotoneCubicNeverLeavesTheIntervalRange) {
  const auto p = table(Rule::MonotoneCubic);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double a0 = p.alpha_deg()[i], a1 = p.alpha_deg()[i + 1];
    const double lo = std::min(p.cl()[i], p.cl()[i + 1]), hi = std::max(p.cl()[i], p.cl()[i + 1]);
    for (int k = 0; k <= 100; ++k) {
      const double cl = interpolate_polar(p, a0 + (a1 - a0) * k / 100.0).cl;
      EXPECT_GE(cl, lo - 1e-12);
      EXPECT_LE(cl, hi + 1e-12);
    }
  }
}

TEST(Polar, MonotoneCubicIsContinuouslyDifferentiable) {
  const auto p = table(Rule::MonotoneCubic);
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double a = p.alpha_deg()[i], h = 1e-6;
    const double left = (interpolate_polar(p, a).cl - interpolate_polar(p, a - h).cl) / h;
    const double right = (interpolate_polar(p, a + h).cl - interpolate_polar(p, a).cl) / h;
    EXPECT_NEAR(left, right, 1e-4 * std::max(1.0, std::abs(left))) << a;
    EXPECT_NEAR(right, p.cl_slope()[i], 1e-4 * std::max(1.0, std::abs(right)));
  }
}

TEST(Polar, DualLookupCarriesTheSlope) {
  const auto p = default_polar();
  for (double a : {-7.3, 0.1, 6.0, 13.9, 40.0}) {
    Dual<1> cl, cd;
    interpolate_polar(p, Dual<1>::variable(a, 0), cl, cd);
    const double h = 1e-6;
    const double fd = (interpolate_polar(p, a + h).cl - interpolate_polar(p, a - h).cl) / (2 * h);
    EXPECT_NEAR(cl.d[0], fd, 1e-6);
  }
}

TEST(Polar, DefaultPolarTracksItsContinuousDefinition) {
  const auto p = default_polar();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pick(-180.0, 180.0);
  for (int i = 0; i < 500; ++i) {
    const double a = pick(rng);
    EXPECT_NEAR(interpolate_polar(p, a).cl, default_polar_value(a).cl, 0.02) << a;
  }
  EXPECT_NEAR(interpolate_polar(p, -4.0).cl, 0.0, 1e-12);
}

TEST(Polar, CsvRoundTripAndValidation) {
  const auto p = table(Rule::Linear);
  std::stringstream ss;
  write_polar_csv(ss, p);
  const auto q = parse_polar_csv(ss);
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_DOUBLE_EQ(q.cl()[i], p.cl()[i]);
  EXPECT_THROW(interpolate_polar(p, 181.0), DomainError);
  EXPECT_THROW(AirfoilPolar({0, 1}, {0, 0}, {0, 0}), Error);
}

TEST(Geometry, BaselineIsTheScaledRotor) {
  const auto g = baseline_geometry();
  EXPECT_DOUBLE_EQ(g.tip_radius, 1.4);
  EXPECT_EQ(g.num_blades, 3);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_NO_THROW(g.validate());
  double span = 0.0;
  for (const auto& s : g.segments) span += s.dr;
  EXPECT_NEAR(g.hub_radius + span, g.tip_radius, 1e-9);
}

TEST(Geometry, CsvRoundTripIsExact) {
  const auto g = baseline_geometry();
  std::stringstream ss;
  write_geometry_csv(ss, g);
  EXPECT_EQ(parse_geometry_csv(ss), g);
}

TEST(Geometry, DesignVectorLayout) {
  auto g = baseline_geometry();
  auto x = g.design_vector();
  ASSERT_EQ(x.size(), 2 * g.size());
  EXPECT_DOUBLE_EQ(x[0], g.segments[0].chord);
  EXPECT_DOUBLE_EQ(x[g.size()], g.segments[0].twist_deg);
  x[1] = 0.2;
  g.set_design_vector(x);
  EXPECT_DOUBLE_EQ(g.segments[1].chord, 0.2);
}

TEST(Geometry, BoundsAreEnforced) {
  auto g = baseline_geometry();
  g.segments[2].chord = 2.0;
  EXPECT_THROW(g.validate(), DomainError);
  g = baseline_geometry();
  g.segments[0].twist_deg = 45.0;
  EXPECT_THROW(g.validate(), DomainError);
}

TEST(Inertia, MatchesHandSumAndScalesWithChordSquared) {
  const auto g = baseline_geometry();
  const MaterialProperties m;
  double sum = 0.0;
  for (const auto& s : g.segments)
    sum += m.density * m.area_factor * m.thickness_ratio * s.chord * s.chord * s.dr * s.r_mid * s.r_mid;
  EXPECT_NEAR(rotor_inertia(g, m), g.num_blades * sum, 1e-12 * sum);

  auto doubled = g;
  for (auto& s : doubled.segments) s.chord *= 2.0;
  EXPECT_NEAR(rotor_inertia(doubled, m), 4.0 * rotor_inertia(g, m), 1e-9);
}

TEST(Inertia, ChordGradientMatchesDifferences) {
  const auto g = baseline_geometry();
  const auto grad = rotor_inertia_chord_gradient(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto up = g, dn = g;
    up.segments[i].chord += 1e-6;
    dn.segments[i].chord -= 1e-6;
    EXPECT_NEAR(grad[i], (rotor_inertia(up) - rotor_inertia(dn)) / 2e-6, 1e-5);
  }
}

}  // namespace
}  // namespace hkt
