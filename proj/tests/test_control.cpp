#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hkt/control.hpp"
#include "hkt/error.hpp"

namespace hkt {
namespace {

TEST(SmoothedSaturation, StaysWithinOnePercentOfTheHardClamp) {
  double worst = 0.0;
  for (int i = 0; i <= 70000; ++i) {
    const double u = 0.01 * i;
    worst = std::max(worst, std::abs(smoothed_sat(u, 700.0, 0.001) - hard_sat(u, 700.0)));
  }
  EXPECT_LE(worst, 7.0);
}

TEST(SmoothedSaturation, WorstGapSitsAtTheCorner) {
  // Closed form at u = gamma: (gamma/4) (sqrt(nu + 4) - sqrt(nu)).
  const double gamma = 700.0, nu = 0.001;
  const double expected = gamma - 0.25 * gamma * (2.0 + std::sqrt(nu + 4.0) - std::sqrt(nu));
  EXPECT_NEAR(gamma - smoothed_sat(gamma, gamma, nu), expected, 1e-9);
  EXPECT_NEAR(expected, 5.4902, 1e-3);
}

TEST(SmoothedSaturation, IsMonotoneAndBounded) {
  double prev = smoothed_sat(-1000.0, 700.0, 0.001);
  for (double u = -1000.0; u <= 2000.0; u += 0.5) {
    const double s = smoothed_sat(u, 700.0, 0.001);
    EXPECT_GE(s, prev - 1e-9);
    EXPECT_LE(s, 700.0 + 1e-9);
    prev = s;
  }
}

TEST(SmoothedSaturation, DerivativeMatchesCentralDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pick(-200.0, 1000.0);
  for (int i = 0; i < 200; ++i) {
    const double u = pick(rng), h = 1e-4;
    const double fd = (smoothed_sat(u + h, 700.0, 0.01) - smoothed_sat(u - h, 700.0, 0.01)) / (2 * h);
    EXPECT_NEAR(smoothed_sat_derivative(u, 700.0, 0.01), fd, 1e-7);
  }
}

TEST(ControlLaw, FeedbackTorqueAndPartials) {
  ControlLaw quad{QuadraticFeedback{2.0}, std::nullopt};
  const auto q = control_torque(quad, 3.0, 0.0);
  EXPECT_DOUBLE_EQ(q.u, 18.0);
  EXPECT_DOUBLE_EQ(q.du_domega, 12.0);
  EXPECT_DOUBLE_EQ(q.du_dgain, 9.0);

  ControlLaw lin{LinearFeedback{5.0}, Saturation{10.0, 0.001}};
  const auto l = control_torque(lin, 100.0, 0.0);
  EXPECT_LE(l.u, 10.0);
  EXPECT_GT(l.u, 9.9);
  EXPECT_LT(l.du_domega, 1e-3);
}

TEST(ControlLaw, RejectsNegativeGainsAndBadSchedules) {
  EXPECT_THROW((ControlLaw{LinearFeedback{-1.0}, std::nullopt}.validate()), DomainError);
  EXPECT_THROW((ControlLaw{OpenLoopSchedule{{0.0, 0.0}, {1.0, 2.0}}, std::nullopt}.validate()), DomainError);
  OpenLoopSchedule even{{0.0, 1.0, 2.0, 3.0}, {0, 0, 0, 0}, OpenLoopSchedule::Interpolation::Collocation};
  EXPECT_THROW((ControlLaw{even, std::nullopt}.validate()), DomainError);
}

TEST(OpenLoopSchedule, LinearRuleInterpolatesAndHoldsEnds) {
  ControlLaw law{OpenLoopSchedule{{0.0, 1.0, 3.0}, {0.0, 10.0, 30.0}}, std::nullopt};
  EXPECT_DOUBLE_EQ(control_torque(law, 0.0, 0.5).u, 5.0);
  EXPECT_DOUBLE_EQ(control_torque(law, 0.0, 2.0).u, 20.0);
  const auto after = control_torque(law, 0.0, 4.0);
  EXPECT_DOUBLE_EQ(after.u, 30.0);
  EXPECT_TRUE(after.clamped);
}

TEST(OpenLoopSchedule, CollocationRuleReproducesQuadraticsAndStaysInNodeRange) {
  OpenLoopSchedule s;
  s.rule = OpenLoopSchedule::Interpolation::Collocation;
  for (int i = 0; i <= 4; ++i) {
    const double t = 0.5 * i;
    s.t.push_back(t);
    s.u.push_back(1.0 + t * t);  // monotone on every segment
  }
  ControlLaw law{s, std::nullopt};
  for (double t = 0.0; t <= 2.0; t += 0.01) EXPECT_NEAR(control_torque(law, 0.0, t).u, 1.0 + t * t, 1e-12);

  // A peaked segment is clipped to its node range.
  OpenLoopSchedule peak{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}, OpenLoopSchedule::Interpolation::Collocation};
  ControlLaw pl{peak, std::nullopt};
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double u = control_torque(pl, 0.0, t).u;
    EXPECT_GE(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(TipSpeedRatio, RequiresPositiveFlow) {
  EXPECT_DOUBLE_EQ(tsr(10.0, 1.4, 2.0), 7.0);
  EXPECT_THROW(tsr(1.0, 1.4, 0.0), DomainError);
}

}  // namespace
}  // namespace hkt
