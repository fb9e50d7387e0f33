#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace hkt::nlp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class GradientMode { Analytic, FiniteDifference };

/// Objective value, constraint values [equalities; inequalities g <= 0] and,
/// when requested, their derivatives.
struct Evaluation {
  double objective = 0.0;
  Vector gradient;  // n
  Vector constraints;  // n_eq + n_ineq
  Matrix jacobian;  // (n_eq + n_ineq) x n
};

/// Smooth problem: minimize f(x) s.t. c_eq(x) = 0, c_in(x) <= 0, lower <= x <= upper.
struct Problem {
  Vector lower;
  Vector upper;
  /// Typical magnitude per variable; the solver iterates on x / scale.
  Vector scale;
  Eigen::Index n_eq = 0;
  Eigen::Index n_ineq = 0;
  /// Must be deterministic. With `derivatives == false` only the values are needed.
  std::function<void(const Vector& x, bool derivatives, Evaluation& out)> evaluate;
  GradientMode gradient_mode = GradientMode::Analytic;
  double fd_step = 1e-6;  // on scaled variables

  Eigen::Index size() const { return lower.size(); }
  Eigen::Index constraint_count() const { return n_eq + n_ineq; }
  /// Throws ConfigError on inconsistent dimensions or lower > upper.
  void validate() const;
};

enum class Status { Converged, IterationLimit, LineSearchFailure };

std::string to_string(Status s);

struct Solution {
  Vector x;
  double objective = 0.0;
  double max_violation = 0.0;  // recomputed from x at exit
  double optimality = 0.0;     // projected Lagrangian gradient, scaled variables, inf-norm
  Vector multipliers;
  int iterations = 0;          // inner quasi-Newton iterations, all outer loops
  int outer_iterations = 0;
  int restarts = 0;
  Status status = Status::IterationLimit;

  bool converged() const { return status == Status::Converged; }
};

struct Options {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-6;
  int max_iter = 5000;   // total inner iterations per start
  int max_outer = 40;
  int memory = 10;
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  double multiplier_bound = 1e8;
  int restarts = 3;
  std::uint64_t seed = 0;
  std::ostream* log = nullptr;  // one JSON record per outer iteration
};

/// Augmented-Lagrangian outer loop around a projected limited-memory BFGS
/// solver for the bound-constrained subproblems.
Solution solve(const Problem& problem, const Vector& x0, const Options& options = {});

/// Evaluates values and derivatives, filling derivatives by central
/// differences when the problem is in finite-difference mode.
void evaluate_with_derivatives(const Problem& problem, const Vector& x, Evaluation& out);

/// Largest equality residual or positive inequality value at x.
double max_violation(const Problem& problem, const Vector& x);
double max_violation(const Problem& problem, const Evaluation& e);

/// Worst component-wise relative error between the supplied objective
/// gradient and central differences with step `step * scale_i`. The
/// denominator is max(|fd_i|, |g_i|, 1e-2 * max_j |fd_j|).
double check_gradient(const Problem& problem, const Vector& x, double step = 1e-6);

/// Same measure for every constraint row of the Jacobian.
double check_jacobian(const Problem& problem, const Vector& x, double step = 1e-6);

}  // namespace hkt::nlp
