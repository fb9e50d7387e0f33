#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hkt/ccd.hpp"
#include "hkt/error.hpp"
#include "hkt/sensitivity.hpp"
#include "support.hpp"

namespace hkt {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Ccd, ModeNamesRoundTrip) {
  for (auto m : {ControlMode::Oloc, ControlMode::LinearFeedback, ControlMode::QuadraticFeedback})
    EXPECT_EQ(parse_control_mode(to_string(m)), m);
  EXPECT_THROW(parse_control_mode("pid"), ConfigError);
}

TEST(Ccd, DeltaFormatting) {
  EXPECT_EQ(format_delta(-0.00601), "(-0.601%)");
  EXPECT_EQ(format_delta(0.0), "(+0.000%)");
  EXPECT_EQ(format_delta(0.06042), "(+6.042%)");
}

TEST(Ccd, OptimalGainFollowsTheClosedForm) {
  CpCurve cp;
  cp.best_tsr = 7.0;
  cp.best_cp = 0.45;
  const auto g = baseline_geometry();
  EXPECT_NEAR(optimal_quadratic_gain(g, {}, cp), 0.5 * 1000.0 * kPi * std::pow(1.4, 5) * 0.45 / 343.0, 1e-9);
}

TEST(Ccd, MeanVelocityOfTheSinusoid) {
  const double T = 50.0;
  const double exact = 1.5 + 0.2 * (1.0 - std::cos(0.25 * T)) / (0.25 * T);
  EXPECT_NEAR(mean_velocity(FlowProfile::sinusoidal_inflow(), T), exact, 1e-10);
}

TEST(Ccd, LinearStartingGainMatchesTheQuadraticAtTheNominalSpeed) {
  const auto rotor = test::baseline_rotor();
  const auto flow = FlowProfile::sinusoidal_inflow();
  const auto cp = cp_curve(rotor.geometry(), rotor.polar(), rotor.fluid(), report_tsr_grid());
  const double k2 = initial_gain(ControlMode::QuadraticFeedback, rotor, flow, 50.0);
  const double k1 = initial_gain(ControlMode::LinearFeedback, rotor, flow, 50.0);
  EXPECT_NEAR(k2, optimal_quadratic_gain(rotor.geometry(), rotor.fluid(), cp), 1e-9 * k2);
  EXPECT_NEAR(k1, k2 * cp.best_tsr * mean_velocity(flow, 50.0) / 1.4, 1e-9 * k1);
}

TEST(Ccd, SpecValidation) {
  CcdSpec s;
  EXPECT_NO_THROW(s.validate());
  s.gain_bounds = std::make_pair(5.0, 1.0);
  EXPECT_THROW(s.validate(), ConfigError);
  s = CcdSpec{};
  s.mode = ControlMode::QuadraticFeedback;
  s.initial_gain = 80.0;  // above the default [0, 50]
  EXPECT_THROW(s.validate(), ConfigError);
  s = CcdSpec{};
  s.initial_geometry.segments[0].chord = 5.0;
  EXPECT_THROW(s.validate(), ConfigError);
}

CcdSpec short_spec(ControlMode mode) {
  CcdSpec s;
  s.mode = mode;
  s.horizon = 10.0;
  s.segments = 10;
  s.u_max = 700.0;
  return s;
}

TEST(Ccd, FeedbackDesignImprovesOnItsStartingLaw) {
  const auto rotor = test::baseline_rotor();
  const auto spec = short_spec(ControlMode::QuadraticFeedback);
  const auto r = ccd_feedback(spec, rotor);
  ASSERT_TRUE(r.converged()) << nlp::to_string(r.status);
  ASSERT_TRUE(r.gain);
  EXPECT_GE(*r.gain, 0.0);
  EXPECT_LE(*r.gain, 50.0);
  EXPECT_NO_THROW(r.geometry.validate(spec.bounds));

  SimulationSettings s;
  s.horizon = 10.0;
  const double k0 = initial_gain(spec.mode, rotor, spec.flow, spec.horizon);
  const double e0 = simulate(rotor, {QuadraticFeedback{k0}, Saturation{700.0, 0.001}}, spec.flow, s).energy;
  EXPECT_GT(r.energy, e0);
  // The reported trajectory is a replay of the design.
  const auto replay = simulate(rotor.with_geometry(r.geometry), r.control_law(700.0, 0.001), spec.flow, s);
  EXPECT_DOUBLE_EQ(replay.energy, r.energy);
  for (double u : r.trajectory.u) EXPECT_LE(u, 707.0);
}

TEST(Ccd, FiniteDifferenceGradientsReachTheSameDesign) {
  const auto rotor = test::baseline_rotor();
  auto spec = short_spec(ControlMode::LinearFeedback);
  spec.horizon = 5.0;
  spec.freeze_geometry = true;  // keeps the differenced problem small
  const auto exact = ccd_feedback(spec, rotor);
  spec.gradient_mode = nlp::GradientMode::FiniteDifference;
  const auto fd = ccd_feedback(spec, rotor);
  EXPECT_LT(test::relative(fd.energy, exact.energy), 1e-5);
}

TEST(Ccd, OlocDesignRespectsTheTorqueLimitAndBeatsFeedback) {
  const auto rotor = test::baseline_rotor();
  const auto oloc = ccd_oloc(short_spec(ControlMode::Oloc), rotor);
  ASSERT_TRUE(oloc.converged()) << nlp::to_string(oloc.status);
  ASSERT_TRUE(oloc.schedule);
  for (double u : oloc.schedule->u) EXPECT_LE(u, 700.0 + 1e-9);
  for (double u : oloc.trajectory.u) EXPECT_LE(u, 700.0 + 1e-9);
  const auto quad = ccd_feedback(short_spec(ControlMode::QuadraticFeedback), rotor);
  EXPECT_GE(oloc.energy, quad.energy * (1.0 - 5e-4));
  EXPECT_LT(test::relative(oloc.energy, oloc.collocation_energy), 0.01);
}

TEST(Sensitivity, PerturbationsOfTheSinusoid) {
  const auto base = FlowProfile::sinusoidal_inflow();
  const auto a = perturb_flow(base, UncertaintyKind::A);
  const auto b = perturb_flow(base, UncertaintyKind::B);
  const auto c = perturb_flow(base, UncertaintyKind::C);
  for (double t : {0.0, 7.0, 31.0}) {
    EXPECT_NEAR(a.velocity(t), 1.1 * (0.2 * std::sin(0.25 * t) + 1.5), 1e-14);
    EXPECT_NEAR(b.velocity(t), 0.2 * std::sin(0.225 * t) + 1.5, 1e-14);
    EXPECT_NEAR(c.velocity(t), 0.2 * std::sin(0.25 * t + 0.2 * kPi) + 1.5, 1e-14);
  }
  EXPECT_THROW(perturb_flow(FlowProfile::step_inflow(), UncertaintyKind::A), ConfigError);
  EXPECT_EQ(parse_uncertainty("B"), UncertaintyKind::B);
  EXPECT_THROW(parse_uncertainty("D"), ConfigError);
}

TEST(Sensitivity, TableStructureAndRatios) {
  const auto rotor = test::baseline_rotor();
  auto base = short_spec(ControlMode::Oloc);
  SensitivityDesigns d{ccd_oloc(base, rotor), ccd_feedback(short_spec(ControlMode::QuadraticFeedback), rotor),
                       ccd_feedback(short_spec(ControlMode::LinearFeedback), rotor)};
  const std::vector<std::uint64_t> seeds{0, 1};
  const auto rep = sensitivity_table(rotor, d, base, {UncertaintyKind::A}, seeds, SensorModel{});
  ASSERT_EQ(rep.ceilings.size(), 1u);
  ASSERT_EQ(rep.cells.size(), 3u);
  const auto& q = rep.cell("quadratic", UncertaintyKind::A);
  ASSERT_EQ(q.seed_energies.size(), 2u);
  EXPECT_NEAR(q.energy, 0.5 * (q.seed_energies[0] + q.seed_energies[1]), 1e-9);
  EXPECT_NEAR(q.ratio, q.energy / rep.ceilings[0], 1e-12);
  EXPECT_EQ(rep.cell("oloc", UncertaintyKind::A).seed_energies.size(), 1u);
  // The ceiling knows the perturbed flow; noisy feedback cannot beat it by much.
  EXPECT_LT(q.ratio, 1.001);
}

}  // namespace
}  // namespace hkt
