#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hkt/error.hpp"
#include "hkt/nlp.hpp"

namespace hkt::nlp {
namespace {

Problem box(Eigen::Index n, double lo, double hi) {
  Problem p;
  p.lower = Vector::Constant(n, lo);
  p.upper = Vector::Constant(n, hi);
  p.scale = Vector::Ones(n);
  return p;
}

Problem clamped_quadratic() {
  Problem p = box(4, -1.0, 1.0);
  p.evaluate = [](const Vector& x, bool d, Evaluation& e) {
    const Vector c = (Vector(4) << 0.3, 2.0, -3.0, -0.5).finished();
    e.objective = (x - c).squaredNorm();
    if (d) e.gradient = 2.0 * (x - c);
  };
  return p;
}

// min x0^2 + 2 x1^2 subject to x0 + x1 = 1 and x0 - 0.5 <= 0.
Problem constrained() {
  Problem p = box(2, -10.0, 10.0);
  p.n_eq = 1;
  p.n_ineq = 1;
  p.evaluate = [](const Vector& x, bool d, Evaluation& e) {
    e.objective = x[0] * x[0] + 2.0 * x[1] * x[1];
    e.constraints = (Vector(2) << x[0] + x[1] - 1.0, x[0] - 0.5).finished();
    if (d) {
      e.gradient = (Vector(2) << 2.0 * x[0], 4.0 * x[1]).finished();
      e.jacobian = (Matrix(2, 2) << 1.0, 1.0, 1.0, 0.0).finished();
    }
  };
  return p;
}

Problem rosenbrock(double stretch = 1.0) {
  Problem p = box(2, -5.0 * stretch, 5.0 * stretch);
  p.scale = Vector::Constant(2, stretch);
  p.evaluate = [stretch](const Vector& z, bool d, Evaluation& e) {
    const double x = z[0] / stretch, y = z[1] / stretch;
    e.objective = 100.0 * (y - x * x) * (y - x * x) + (1.0 - x) * (1.0 - x);
    if (d) {
      e.gradient.resize(2);
      e.gradient[0] = (-400.0 * x * (y - x * x) - 2.0 * (1.0 - x)) / stretch;
      e.gradient[1] = 200.0 * (y - x * x) / stretch;
    }
  };
  return p;
}

TEST(Nlp, BoundConstrainedQuadraticLandsOnTheClampedPoint) {
  Options o;
  o.optimality_tol = 1e-9;
  const auto s = solve(clamped_quadratic(), Vector::Zero(4), o);
  ASSERT_TRUE(s.converged());
  const Vector expected = (Vector(4) << 0.3, 1.0, -1.0, -0.5).finished();
  EXPECT_LT((s.x - expected).lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(Nlp, SatisfiesKktConditionsWithActiveInequality) {
  // Unconstrained by the inequality the optimum is (2/3, 1/3); x0 <= 0.5 binds.
  Options o;
  o.optimality_tol = 1e-8;
  o.feasibility_tol = 1e-9;
  const auto p = constrained();
  const auto s = solve(p, Vector::Zero(2), o);
  ASSERT_TRUE(s.converged()) << to_string(s.status);
  EXPECT_NEAR(s.x[0], 0.5, 1e-7);
  EXPECT_NEAR(s.x[1], 0.5, 1e-7);
  EXPECT_LE(s.max_violation, 1e-9);

  // grad f + J^T lambda = 0 with lambda_in >= 0: 2 x0 + l_eq + l_in = 0, 4 x1 + l_eq = 0.
  ASSERT_EQ(s.multipliers.size(), 2);
  const double l_eq = -4.0 * s.x[1], l_in = -2.0 * s.x[0] - l_eq;
  EXPECT_NEAR(std::abs(s.multipliers[0]), std::abs(l_eq), 1e-5);
  EXPECT_NEAR(s.multipliers[1], l_in, 1e-5);
  EXPECT_GE(s.multipliers[1], 0.0);
  EXPECT_LE(s.optimality, 1e-8);
}

TEST(Nlp, SolvesRosenbrock) {
  Options o;
  o.optimality_tol = 1e-8;
  const auto s = solve(rosenbrock(), (Vector(2) << -1.2, 1.0).finished(), o);
  ASSERT_TRUE(s.converged());
  EXPECT_NEAR(s.x[0], 1.0, 1e-5);
  EXPECT_NEAR(s.x[1], 1.0, 1e-5);
}

TEST(Nlp, ResultIsInvariantToVariableUnits) {
  Options o;
  o.optimality_tol = 1e-8;
  const auto a = solve(rosenbrock(1.0), (Vector(2) << -1.2, 1.0).finished(), o);
  const auto b = solve(rosenbrock(1000.0), (Vector(2) << -1200.0, 1000.0).finished(), o);
  ASSERT_TRUE(a.converged());
  ASSERT_TRUE(b.converged());
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_NEAR(b.x[0] / 1000.0, a.x[0], 1e-9);
  EXPECT_NEAR(b.x[1] / 1000.0, a.x[1], 1e-9);
}

TEST(Nlp, RepeatedSolvesAreBitIdentical) {
  const auto a = solve(constrained(), Vector::Zero(2));
  const auto b = solve(constrained(), Vector::Zero(2));
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Nlp, MeritDecreasesWithinEveryOuterIteration) {
  std::stringstream log;
  Options o;
  o.log = &log;
  const auto s = solve(constrained(), (Vector(2) << 5.0, -3.0).finished(), o);
  ASSERT_TRUE(s.converged());
  int records = 0;
  for (std::string line; std::getline(log, line);) {
    const auto j = nlohmann::json::parse(line);
    if (!j.contains("merit_start")) continue;
    EXPECT_LE(j["merit_end"].get<double>(), j["merit_start"].get<double>() + 1e-12) << line;
    ++records;
  }
  EXPECT_GT(records, 1);
}

TEST(Nlp, FiniteDifferenceModeReachesTheSameOptimum) {
  auto p = constrained();
  const auto analytic = p.evaluate;
  p.evaluate = [analytic](const Vector& x, bool, Evaluation& e) { analytic(x, false, e); };
  p.gradient_mode = GradientMode::FiniteDifference;
  Options o;
  o.optimality_tol = 1e-7;
  const auto s = solve(p, Vector::Zero(2), o);
  ASSERT_TRUE(s.converged());
  EXPECT_NEAR(s.x[0], 0.5, 1e-6);
  EXPECT_NEAR(s.x[1], 0.5, 1e-6);
}

TEST(Nlp, InfeasibleProblemIsReportedAsSuch) {
  Problem p = box(1, -10.0, 10.0);
  p.n_ineq = 2;
  p.evaluate = [](const Vector& x, bool d, Evaluation& e) {
    e.objective = x[0];
    e.constraints = (Vector(2) << x[0] + 1.0, 1.0 - x[0]).finished();
    if (d) {
      e.gradient = Vector::Ones(1);
      e.jacobian = (Matrix(2, 1) << 1.0, -1.0).finished();
    }
  };
  Options o;
  o.restarts = 0;
  const auto s = solve(p, Vector::Zero(1), o);
  EXPECT_FALSE(s.converged());
  EXPECT_GT(s.max_violation, 0.5);
}

TEST(Nlp, GradientCheckerFlagsWrongDerivatives) {
  auto p = constrained();
  const Vector x = (Vector(2) << 0.3, -0.7).finished();
  EXPECT_LT(check_gradient(p, x), 1e-8);
  EXPECT_LT(check_jacobian(p, x), 1e-8);
  const auto good = p.evaluate;
  p.evaluate = [good](const Vector& x, bool d, Evaluation& e) {
    good(x, d, e);
    if (d) e.gradient[1] *= 1.01;
  };
  EXPECT_GT(check_gradient(p, x), 5e-3);
}

TEST(Nlp, NonFiniteEvaluationsAreSolverFailures) {
  Problem p = box(1, -1.0, 1.0);
  p.evaluate = [](const Vector&, bool d, Evaluation& e) {
    e.objective = std::nan("");
    if (d) e.gradient = Vector::Zero(1);
  };
  EXPECT_THROW(solve(p, Vector::Zero(1)), SolverFailure);
}

TEST(Nlp, InconsistentBoundsAreConfigErrors) {
  Problem p = box(2, 1.0, 0.0);
  p.evaluate = [](const Vector&, bool, Evaluation&) {};
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace hkt::nlp
