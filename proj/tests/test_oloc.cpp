#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hkt/ccd.hpp"
#include "hkt/error.hpp"
#include "hkt/oloc.hpp"
#include "support.hpp"

namespace hkt {
namespace {

TEST(CollocationGrid, UniformGridHasSharedEndNodes) {
  const auto g = CollocationGrid::uniform(50.0, 50);
  EXPECT_EQ(g.segments(), 50u);
  EXPECT_EQ(g.node_count(), 101u);
  const auto t = g.node_times();
  ASSERT_EQ(t.size(), 101u);
  EXPECT_DOUBLE_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t[1], 0.5);
  EXPECT_DOUBLE_EQ(t.back(), 50.0);
}

TEST(CollocationDefects, VanishForACubicState) {
  // omega = t^3 solves omega' = 3 t^2; Hermite-Simpson is exact for cubics.
  CollocationGrid g{{0.0, 0.4, 1.0, 1.7, 3.0}};
  const auto t = g.node_times();
  std::vector<double> x, f;
  for (double ti : t) {
    x.push_back(ti * ti * ti);
    f.push_back(3.0 * ti * ti);
  }
  std::vector<double> out(2 * g.segments());
  collocation_defects(g, x, f, out);
  for (double d : out) EXPECT_NEAR(d, 0.0, 1e-13);

  // t^4 on [0, 1]: Simpson still integrates the cubic rate exactly, but the
  // Hermite midpoint misses by h^4/16.
  CollocationGrid one{{0.0, 1.0}};
  std::vector<double> x4{0.0, 0.0625, 1.0}, f4{0.0, 0.5, 4.0}, d4(2);
  collocation_defects(one, x4, f4, d4);
  EXPECT_NEAR(d4[0], 0.0, 1e-15);
  EXPECT_NEAR(d4[1], 0.0625, 1e-15);
}

TEST(CollocationDefects, RejectMismatchedSizes) {
  const auto g = CollocationGrid::uniform(1.0, 2);
  std::vector<double> x(4), f(5), out(4);
  EXPECT_THROW(collocation_defects(g, x, f, out), DomainError);
}

class TranscriptionTest : public ::testing::Test {
 protected:
  TranscribedProblem make(bool free_geometry, std::optional<double> u_max = std::nullopt, int segments = 50) {
    TranscriptionOptions o;
    o.segments = segments;
    o.free_geometry = free_geometry;
    o.u_max = u_max;
    return TranscribedProblem(test::baseline_rotor(), FlowProfile::sinusoidal_inflow(), 50.0, o);
  }

  nlp::Vector random_point(const TranscribedProblem& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(4.0, 12.0), u(50.0, 600.0), dc(-0.01, 0.01), dt(-2.0, 2.0);
    nlp::Vector x(p.size());
    for (std::size_t n = 0; n < p.nodes(); ++n) {
      x[static_cast<Eigen::Index>(p.omega_index(n))] = w(rng);
      x[static_cast<Eigen::Index>(p.u_index(n))] = u(rng);
    }
    const auto& g = p.rotor().geometry();
    for (std::size_t i = 0; i < p.blade_segments(); ++i) {
      x[static_cast<Eigen::Index>(p.chord_index(i))] = g.segments[i].chord + dc(rng);
      x[static_cast<Eigen::Index>(p.twist_index(i))] = g.segments[i].twist_deg + dt(rng);
    }
    return x;
  }
};

TEST_F(TranscriptionTest, LayoutCounts) {
  const auto p = make(false);
  EXPECT_EQ(p.nodes(), 101u);
  EXPECT_EQ(p.size(), 202u);
  EXPECT_EQ(p.defect_count(), 50u);
  EXPECT_EQ(p.defect_rows(), 100u);
  EXPECT_TRUE(std::isinf(p.u_upper()));
  const auto q = make(true, 700.0);
  EXPECT_EQ(q.size(), 202u + 18u);
  EXPECT_DOUBLE_EQ(q.u_upper(), 700.0);
  EXPECT_EQ(q.nlp().n_eq, 100);
}

TEST_F(TranscriptionTest, EnergyIsTheSimpsonRuleOfPower) {
  const auto p = make(true, std::nullopt, 20);
  const auto x = random_point(p, 4);
  const auto g = p.geometry(x);
  const auto& t = p.times();
  double sum = 0.0;
  for (std::size_t k = 0; k + 2 < t.size(); k += 2) {
    auto power = [&](std::size_t n) {
      const double w = x[static_cast<Eigen::Index>(n)];
      return rotor_torque(g, p.flow().velocity(t[n]), w, p.rotor().polar(), p.rotor().fluid()) * w;
    };
    sum += (t[k + 2] - t[k]) / 6.0 * (power(k) + 4.0 * power(k + 1) + power(k + 2));
  }
  EXPECT_LT(test::relative(p.energy(x), sum), 1e-13);
}

TEST_F(TranscriptionTest, DerivativesMatchDifferencesAtRandomPoints) {
  for (bool free_geometry : {false, true}) {
    const auto p = make(free_geometry, 700.0, 20);
    const auto problem = p.nlp();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto x = random_point(p, seed);
      EXPECT_LT(nlp::check_gradient(problem, x), 1e-5) << free_geometry;
      EXPECT_LT(nlp::check_jacobian(problem, x), 1e-5) << free_geometry;
    }
  }
}

TEST_F(TranscriptionTest, InitialGuessRespectsBoundsAndNodes) {
  const auto p = make(true, 700.0);
  const auto rotor = test::baseline_rotor();
  const double k = initial_gain(ControlMode::QuadraticFeedback, rotor, p.flow(), 50.0);
  const auto x = p.initial_guess({QuadraticFeedback{k}, Saturation{700.0, 0.001}});
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    EXPECT_GE(x[i], p.lower()[i]);
    EXPECT_LE(x[i], p.upper()[i]);
  }
  // A simulated trajectory nearly satisfies the collocation equations; the
  // saturation corners keep the defects at a fraction of a percent of speed.
  const auto d = p.defect_residuals(x);
  const double top = x.head(static_cast<Eigen::Index>(p.nodes())).maxCoeff();
  EXPECT_LT(d.lpNorm<Eigen::Infinity>(), 0.01 * top);
}

TEST_F(TranscriptionTest, HermiteStateIsExactAtTheNodes) {
  const auto p = make(false, std::nullopt, 10);
  const auto x = random_point(p, 8);
  const auto rates = p.rates(x);
  for (std::size_t n = 0; n < p.nodes(); ++n)
    EXPECT_NEAR(state_at(p, x, rates, p.times()[n]), x[static_cast<Eigen::Index>(n)], 1e-12);
}

TEST_F(TranscriptionTest, ShortControlOnlySolveAgreesWithResimulation) {
  TranscriptionOptions o;
  o.segments = 20;
  const TranscribedProblem p(test::baseline_rotor(), FlowProfile::sinusoidal_inflow(), 20.0, o);
  const auto rotor = test::baseline_rotor();
  const double k = initial_gain(ControlMode::QuadraticFeedback, rotor, p.flow(), 20.0);
  const auto x0 = p.initial_guess({QuadraticFeedback{k}, std::nullopt});
  const auto r = solve_oloc(p, x0, ccd_solver_options());
  ASSERT_TRUE(r.solution.converged()) << nlp::to_string(r.solution.status);
  EXPECT_LT(r.max_defect, 1e-6);

  // Replay the schedule through the simulator from the same initial speed.
  SimulationSettings s;
  s.horizon = 20.0;
  s.initial_omega = r.solution.x[0];
  const auto tr = simulate(rotor, {r.schedule, std::nullopt}, p.flow(), s);
  EXPECT_LT(test::relative(tr.energy, r.energy), 0.01);
  EXPECT_GE(r.energy, p.energy(x0) - 1e-6 * r.energy);
}

TEST(Transcription, RejectsBadOptions) {
  TranscriptionOptions o;
  o.u_max = -1.0;
  EXPECT_THROW(TranscribedProblem(test::baseline_rotor(), FlowProfile::sinusoidal_inflow(), 10.0, o), ConfigError);
  o.u_max.reset();
  o.segments = 0;
  EXPECT_ANY_THROW(TranscribedProblem(test::baseline_rotor(), FlowProfile::sinusoidal_inflow(), 10.0, o));
}

}  // namespace
}  // namespace hkt
