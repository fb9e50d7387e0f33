#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hkt/ccd.hpp"
#include "hkt/error.hpp"
#include "hkt/simulate.hpp"
#include "support.hpp"

namespace hkt {
namespace {

TEST(Flow, ProfilesFollowTheirFormulas) {
  const auto step = FlowProfile::step_inflow();
  EXPECT_NEAR(step.velocity(30.0), 1.3, 1e-12);
  EXPECT_NEAR(step.velocity(0.0), 1.2 + 0.2 / (1.0 + std::exp(30.0)), 1e-15);
  EXPECT_NEAR(step.velocity(60.0), 1.4, 1e-12);
  const auto sine = FlowProfile::sinusoidal_inflow();
  for (double t : {0.0, 3.3, 17.0, 50.0}) EXPECT_NEAR(sine.velocity(t), 0.2 * std::sin(0.25 * t) + 1.5, 1e-15);
  EXPECT_NEAR(FlowProfile::scaled(sine, 1.1).velocity(2.0), 1.1 * sine.velocity(2.0), 1e-15);
  EXPECT_NEAR(sine.min_velocity(50.0), 1.3, 1e-9);
  EXPECT_THROW(FlowProfile::constant(-1.0).validate(10.0), ConfigError);
}

TEST(Trapezoid, IntegratesLinearFunctionsExactly) {
  const std::vector<double> t{0.0, 0.5, 2.0, 3.0}, y{1.0, 2.0, 5.0, 7.0};
  EXPECT_DOUBLE_EQ(trapezoid(t, y), 0.5 * 1.5 + 1.5 * 3.5 + 1.0 * 6.0);
}

TEST(Simulate, FreewheelingAtEquilibriumProducesNoEnergy) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{QuadraticFeedback{0.0}, std::nullopt};
  SimulationSettings s;
  s.horizon = 20.0;
  const auto tr = simulate(rotor, law, FlowProfile::constant(1.5), s);
  EXPECT_NEAR(tr.energy, 0.0, 1e-6);
  EXPECT_FALSE(tr.stalled());
  for (double u : tr.u) EXPECT_EQ(u, 0.0);
}

TEST(Simulate, OptimalQuadraticLawHoldsTheBestTipSpeedRatio) {
  const auto rotor = test::baseline_rotor();
  const auto cp = cp_curve(rotor.geometry(), rotor.polar(), rotor.fluid(), report_tsr_grid());
  const double k = optimal_quadratic_gain(rotor.geometry(), rotor.fluid(), cp);
  const ControlLaw law{QuadraticFeedback{k}, std::nullopt};
  const double w = equilibrium_speed(rotor, law, 1.5);
  EXPECT_NEAR(w * 1.4 / 1.5, cp.best_tsr, 1e-6 * cp.best_tsr);

  SimulationSettings s;
  s.horizon = 10.0;
  const auto tr = simulate(rotor, law, FlowProfile::constant(1.5), s);
  const double ideal = cp.best_cp * 0.5 * 1000.0 * std::numbers::pi * 1.4 * 1.4 * std::pow(1.5, 3) * 10.0;
  EXPECT_LT(test::relative(tr.energy, ideal), 1e-6);
}

TEST(Simulate, EnergyIsTheTrapezoidOfPower) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{LinearFeedback{90.0}, Saturation{700.0, 0.001}};
  SimulationSettings s;
  s.horizon = 12.0;
  const auto tr = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s);
  ASSERT_EQ(tr.size(), 1201u);
  EXPECT_DOUBLE_EQ(tr.energy, trapezoid(tr.t, tr.power));
  for (std::size_t k = 0; k < tr.size(); ++k) EXPECT_NEAR(tr.power[k], tr.torque[k] * tr.omega[k], 1e-9);
}

TEST(Simulate, Rk4ConvergesAtFourthOrder) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{QuadraticFeedback{12.0}, std::nullopt};
  auto final_speed = [&](double dt) {
    SimulationSettings s;
    s.horizon = 8.0;
    s.dt = dt;
    s.initial_omega = 4.0;  // far from equilibrium so the transient matters
    return simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s).omega.back();
  };
  const double ref = final_speed(0.0025);
  const double e1 = std::abs(final_speed(0.04) - ref), e2 = std::abs(final_speed(0.02) - ref);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 3.5);
  EXPECT_LT(order, 4.7);
}

TEST(Simulate, HalvingTheStepBarelyMovesTheEnergy) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{QuadraticFeedback{14.0}, Saturation{700.0, 0.001}};
  SimulationSettings s;
  s.horizon = 50.0;
  const double e1 = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s).energy;
  s.dt = 0.005;
  const double e2 = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s).energy;
  EXPECT_LT(test::relative(e1, e2), 1e-6);
}

TEST(Simulate, OverloadedRotorStallsAtTheFloor) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{OpenLoopSchedule{{0.0, 1.0}, {2000.0, 2000.0}}, std::nullopt};
  SimulationSettings s;
  s.horizon = 5.0;
  s.initial_omega = 5.0;
  const auto tr = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s);
  EXPECT_TRUE(tr.stalled());
  for (double w : tr.omega) EXPECT_GE(w, 0.0);
}

TEST(Simulate, RejectsHorizonsThatAreNotMultiplesOfTheStep) {
  const auto rotor = test::baseline_rotor();
  SimulationSettings s;
  s.horizon = 1.005;
  s.dt = 0.01;
  EXPECT_THROW(simulate(rotor, {QuadraticFeedback{1.0}, std::nullopt}, FlowProfile::sinusoidal_inflow(), s),
               ConfigError);
}

TEST(Simulate, SensorRunsAreSeeded) {
  const auto rotor = test::baseline_rotor();
  const ControlLaw law{QuadraticFeedback{14.0}, std::nullopt};
  SimulationSettings s;
  s.horizon = 10.0;
  s.sensor = SensorModel{};
  const auto a = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s);
  const auto b = simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s);
  EXPECT_EQ(a.omega, b.omega);
  EXPECT_EQ(a.energy, b.energy);
  s.sensor->seed = 1;
  EXPECT_NE(simulate(rotor, law, FlowProfile::sinusoidal_inflow(), s).energy, a.energy);
}

class GradientTest : public ::testing::TestWithParam<bool> {};

TEST_P(GradientTest, ExactSensitivitiesMatchDifferences) {
  const bool linear = GetParam();
  const auto rotor = test::baseline_rotor();
  ControlLaw law;
  if (linear)
    law.law = LinearFeedback{95.0};
  else
    law.law = QuadraticFeedback{13.0};
  law.saturation = Saturation{700.0, 0.001};
  SimulationSettings s;
  s.horizon = 10.0;
  const auto flow = FlowProfile::sinusoidal_inflow();
  const auto eg = simulate_with_gradient(rotor, law, flow, s);
  EXPECT_NEAR(eg.energy, simulate(rotor, law, flow, s).energy, 1e-9 * eg.energy);

  auto energy_at = [&](std::size_t i, double h) {
    ControlLaw l = law;
    auto g = rotor.geometry();
    if (i == 0) {
      if (linear)
        l.law = LinearFeedback{law.gain() + h};
      else
        l.law = QuadraticFeedback{law.gain() + h};
    } else if (i <= g.size()) {
      g.segments[i - 1].chord += h;
    } else {
      g.segments[i - 1 - g.size()].twist_deg += h;
    }
    return simulate(rotor.with_geometry(g), l, flow, s).energy;
  };
  ASSERT_EQ(eg.gradient.size(), 1 + 2 * rotor.geometry().size());
  for (std::size_t i = 0; i < eg.gradient.size(); ++i) {
    const double h = i == 0 ? 1e-3 * law.gain() : (i <= rotor.geometry().size() ? 1e-5 : 1e-4);
    const double fd = (energy_at(i, h) - energy_at(i, -h)) / (2 * h);
    EXPECT_NEAR(eg.gradient[i], fd, 1e-4 * std::max(std::abs(fd), 1.0)) << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Laws, GradientTest, ::testing::Values(false, true));

}  // namespace
}  // namespace hkt
