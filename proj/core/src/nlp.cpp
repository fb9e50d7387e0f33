#include "hkt/nlp.hpp"

#include <cmath>
#include <deque>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt::nlp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::IterationLimit: return "iteration-limit";
    case Status::LineSearchFailure: return "line-search-failure";
  }
  return "unknown";
}

void Problem::validate() const {
  const auto n = lower.size();
  if (n == 0) throw ConfigError("problem has no variables");
  if (upper.size() != n) throw ConfigError("bound vectors differ in length");
  if (scale.size() != 0 && scale.size() != n) throw ConfigError("scale vector has the wrong length");
  if (scale.size() != 0 && !(scale.array() > 0.0).all()) throw ConfigError("variable scales must be positive");
  if ((lower.array() > upper.array()).any()) throw ConfigError("lower bound exceeds upper bound");
  if (n_eq < 0 || n_ineq < 0) throw ConfigError("negative constraint count");
  if (!evaluate) throw ConfigError("problem has no evaluator");
  if (!(fd_step > 0.0)) throw ConfigError("finite-difference step must be positive");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite(const Evaluation& e, const Vector& x, bool derivatives) {
  bool ok = std::isfinite(e.objective) && e.constraints.allFinite();
  if (derivatives) ok = ok && e.gradient.allFinite() && e.jacobian.allFinite();
  if (!ok) {
    std::ostringstream os;
    os << std::setprecision(17) << "non-finite evaluation at x = [";
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << "]";
    throw SolverFailure(os.str());
  }
}

void evaluate_values(const Problem& p, const Vector& x, Evaluation& e) {
  p.evaluate(x, false, e);
  if (e.constraints.size() != p.constraint_count()) {
    if (p.constraint_count() == 0 && e.constraints.size() == 0) return;
    throw SolverFailure("evaluator returned the wrong number of constraints");
  }
  check_finite(e, x, false);
}

Vector scale_of(const Problem& p) { return p.scale.size() ? p.scale : Vector::Ones(p.size()); }

double projected_gradient_norm(const Vector& z, const Vector& g, const Vector& lo, const Vector& hi) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double step = std::clamp(z[i] - g[i], lo[i], hi[i]) - z[i];
    worst = std::max(worst, std::abs(step));
  }
  return worst;
}

// --- bound-constrained limited-memory quasi-Newton -------------------------

struct BoxResult {
  Vector z, g;
  double f = 0.0;
  double pg = 0.0;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

using FunGrad = std::function<double(const Vector&, Vector&)>;

BoxResult minimize_box(const FunGrad& fg, Vector z, const Vector& lo, const Vector& hi, double tol, int max_iter,
                       int memory) {
  const Eigen::Index n = z.size();
  z = z.cwiseMax(lo).cwiseMin(hi);
  BoxResult r;
  Vector g(n);
  double f = fg(z, g);
  std::deque<Vector> S, Y;
  std::deque<double> rho;
  Vector mask(n), d(n), q(n), zt(n), gt(n);
  std::vector<double> alpha(static_cast<std::size_t>(memory));

  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    r.pg = projected_gradient_norm(z, g, lo, hi);
    if (r.pg <= tol) {
      r.converged = true;
      break;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool pinned = lo[i] == hi[i] || (z[i] <= lo[i] && g[i] > 0.0) || (z[i] >= hi[i] && g[i] < 0.0);
      mask[i] = pinned ? 0.0 : 1.0;
    }
    q = g.cwiseProduct(mask);
    const std::size_t m = S.size();
    for (std::size_t k = m; k-- > 0;) {
      alpha[k] = rho[k] * S[k].dot(q);
      q -= alpha[k] * Y[k];
    }
    if (m > 0) q *= S.back().dot(Y.back()) / Y.back().squaredNorm();
    for (std::size_t k = 0; k < m; ++k) {
      const double beta = rho[k] * Y[k].dot(q);
      q += (alpha[k] - beta) * S[k];
    }
    d = -q.cwiseProduct(mask);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      S.clear();
      Y.clear();
      rho.clear();
      d = -g.cwiseProduct(mask);
      slope = g.dot(d);
    }
    double step = S.empty() ? std::min(1.0, 1.0 / d.lpNorm<Eigen::Infinity>()) : 1.0;

    bool accepted = false;
    double ft = f;
    for (int trial = 0; trial < 40; ++trial) {
      zt = (z + step * d).cwiseMax(lo).cwiseMin(hi);
      const double decrease = g.dot(zt - z);
      if (decrease >= 0.0) {
        step *= 0.5;
        continue;
      }
      ft = fg(zt, gt);
      if (std::isfinite(ft) && ft <= f + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!S.empty()) {
        S.clear();
        Y.clear();
        rho.clear();
        continue;
      }
      r.line_search_failed = true;
      break;
    }
    Vector s = zt - z;
    Vector y = gt - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (static_cast<int>(S.size()) == memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho.push_back(1.0 / sy);
    }
    z = zt;
    g = gt;
    f = ft;
  }
  if (!r.converged) r.pg = projected_gradient_norm(z, g, lo, hi);
  r.converged = r.pg <= tol;
  r.z = std::move(z);
  r.g = std::move(g);
  r.f = f;
  return r;
}

// --- augmented Lagrangian -------------------------------------------------

struct Multipliers {
  Vector eq, ineq;
  double penalty = 10.0;
};

class Scaled {
 public:
  explicit Scaled(const Problem& p) : p_(p), s_(scale_of(p)) {
    lo_ = p.lower.cwiseQuotient(s_);
    hi_ = p.upper.cwiseQuotient(s_);
  }

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  Vector unscale(const Vector& z) const { return z.cwiseProduct(s_); }
  Vector scale(const Vector& x) const { return x.cwiseQuotient(s_); }

  void eval(const Vector& z, bool derivatives, Evaluation& e) const {
    const Vector x = unscale(z);
    if (derivatives) {
      evaluate_with_derivatives(p_, x, e);
      e.gradient = e.gradient.cwiseProduct(s_);
      if (e.jacobian.size()) e.jacobian = e.jacobian * s_.asDiagonal();
    } else {
      evaluate_values(p_, x, e);
    }
  }

  // Augmented Lagrangian value and gradient in scaled variables.
  double al(const Vector& z, const Multipliers& m, Vector& grad, Evaluation& e) const {
    eval(z, true, e);
    double value = e.objective;
    grad = e.gradient;
    const Eigen::Index ne = p_.n_eq, ni = p_.n_ineq;
    if (ne + ni == 0) return value;
    Vector w(ne + ni);
    const double rho = m.penalty;
    for (Eigen::Index i = 0; i < ne; ++i) {
      const double c = e.constraints[i];
      value += m.eq[i] * c + 0.5 * rho * c * c;
      w[i] = m.eq[i] + rho * c;
    }
    for (Eigen::Index j = 0; j < ni; ++j) {
      const double t = m.ineq[j] + rho * e.constraints[ne + j];
      value += (t > 0.0 ? t * t : 0.0) / (2.0 * rho) - m.ineq[j] * m.ineq[j] / (2.0 * rho);
      w[ne + j] = std::max(0.0, t);
    }
    grad.noalias() += e.jacobian.transpose() * w;
    return value;
  }

 private:
  const Problem& p_;
  Vector s_, lo_, hi_;
};

void write_log(std::ostream& os, int outer, int inner, const Evaluation& e, double violation, double optimality,
               double penalty, double merit_start, double merit_end) {
  os << std::setprecision(17) << "{\"outer\":" << outer << ",\"inner_iterations\":" << inner
     << ",\"objective\":" << e.objective << ",\"violation\":" << violation << ",\"optimality\":" << optimality
     << ",\"penalty\":" << penalty << ",\"merit_start\":" << merit_start << ",\"merit_end\":" << merit_end
     << "}\n";
}

Solution solve_once(const Problem& p, const Vector& x0, const Options& o) {
  const Scaled sc(p);
  const Eigen::Index ne = p.n_eq, ni = p.n_ineq;
  const bool constrained = ne + ni > 0;
  Multipliers mult{Vector::Zero(ne), Vector::Zero(ni), o.initial_penalty};
  Vector z = sc.scale(x0).cwiseMax(sc.lo()).cwiseMin(sc.hi());

  Evaluation e;
  Solution sol;
  double inner_tol = constrained ? std::max(o.optimality_tol, 1e-3) : o.optimality_tol;
  double prev_violation = kInf;
  bool done = false;
  for (int outer = 0; outer < o.max_outer && !done; ++outer) {
    FunGrad fg = [&](const Vector& zz, Vector& grad) { return sc.al(zz, mult, grad, e); };
    Vector g0;
    const double merit_start = fg(z, g0);
    const int budget = o.max_iter - sol.iterations;
    BoxResult r = minimize_box(fg, z, sc.lo(), sc.hi(), inner_tol, budget, o.memory);
    sol.iterations += r.iterations;
    sol.outer_iterations = outer + 1;
    z = r.z;

    sc.eval(z, false, e);
    const double violation = max_violation(p, e);
    for (Eigen::Index i = 0; i < ne; ++i)
      mult.eq[i] = std::clamp(mult.eq[i] + mult.penalty * e.constraints[i], -o.multiplier_bound, o.multiplier_bound);
    for (Eigen::Index j = 0; j < ni; ++j)
      mult.ineq[j] = std::clamp(mult.ineq[j] + mult.penalty * e.constraints[ne + j], 0.0, o.multiplier_bound);
    if (o.log) write_log(*o.log, outer, r.iterations, e, violation, r.pg, mult.penalty, merit_start, r.f);

    const bool feasible = violation <= o.feasibility_tol;
    if (feasible && r.pg <= o.optimality_tol) {
      sol.status = Status::Converged;
      done = true;
    } else if (sol.iterations >= o.max_iter) {
      sol.status = Status::IterationLimit;
      done = true;
    } else if (r.line_search_failed && (feasible || !constrained)) {
      sol.status = Status::LineSearchFailure;
      done = true;
    } else if (!constrained) {
      sol.status = Status::IterationLimit;
      done = true;
    }
    if (violation > 0.25 * prev_violation) mult.penalty *= o.penalty_growth;
    prev_violation = violation;
    inner_tol = std::max(o.optimality_tol, 0.1 * inner_tol);
  }

  // Reported measures are recomputed from the final point.
  sol.x = sc.unscale(z);
  Evaluation fin;
  sc.eval(z, true, fin);
  sol.objective = fin.objective;
  sol.max_violation = max_violation(p, fin);
  Vector lag = fin.gradient;
  if (constrained) {
    Vector w(ne + ni);
    w << mult.eq, mult.ineq;
    lag.noalias() += fin.jacobian.transpose() * w;
  }
  sol.optimality = projected_gradient_norm(z, lag, sc.lo(), sc.hi());
  sol.multipliers.resize(ne + ni);
  sol.multipliers << mult.eq, mult.ineq;
  return sol;
}

bool better(const Solution& a, const Solution& b, double feas_tol) {
  if (a.converged() != b.converged()) return a.converged();
  const bool fa = a.max_violation <= feas_tol, fb = b.max_violation <= feas_tol;
  if (fa != fb) return fa;
  if (fa) return a.objective < b.objective;
  return a.max_violation < b.max_violation;
}

}  // namespace

double max_violation(const Problem& p, const Evaluation& e) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.n_eq; ++i) worst = std::max(worst, std::abs(e.constraints[i]));
  for (Eigen::Index j = 0; j < p.n_ineq; ++j) worst = std::max(worst, e.constraints[p.n_eq + j]);
  return worst;
}

double max_violation(const Problem& p, const Vector& x) {
  Evaluation e;
  evaluate_values(p, x, e);
  return max_violation(p, e);
}

void evaluate_with_derivatives(const Problem& p, const Vector& x, Evaluation& out) {
  const Eigen::Index n = x.size(), m = p.constraint_count();
  if (p.gradient_mode == GradientMode::Analytic) {
    p.evaluate(x, true, out);
    if (out.gradient.size() != n || out.constraints.size() != m || (m > 0 && (out.jacobian.rows() != m || out.jacobian.cols() != n)))
      throw SolverFailure("evaluator returned derivatives of the wrong shape");
    if (m == 0) out.jacobian.resize(0, n);
    check_finite(out, x, true);
    return;
  }
  evaluate_values(p, x, out);
  out.gradient.resize(n);
  out.jacobian.resize(m, n);
  const Vector s = scale_of(p);
  Evaluation plus, minus;
  Vector xp = x, xm = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = p.fd_step * s[i];
    double hi = std::min(x[i] + h, p.upper[i]);
    double lo = std::max(x[i] - h, p.lower[i]);
    if (hi == lo) {
      out.gradient[i] = 0.0;
      out.jacobian.col(i).setZero();
      continue;
    }
    xp[i] = hi;
    xm[i] = lo;
    evaluate_values(p, xp, plus);
    evaluate_values(p, xm, minus);
    out.gradient[i] = (plus.objective - minus.objective) / (hi - lo);
    if (m > 0) out.jacobian.col(i) = (plus.constraints - minus.constraints) / (hi - lo);
    xp[i] = xm[i] = x[i];
  }
}

Solution solve(const Problem& p, const Vector& x0, const Options& o) {
  p.validate();
  if (x0.size() != p.size()) throw ConfigError("initial point has the wrong dimension");
  if (!(o.feasibility_tol > 0.0) || !(o.optimality_tol > 0.0)) throw ConfigError("tolerances must be positive");
  Solution best = solve_once(p, x0, o);
  if (best.converged()) return best;

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Vector s = scale_of(p);
  for (int k = 1; k <= o.restarts; ++k) {
    Vector start = x0;
    for (Eigen::Index i = 0; i < start.size(); ++i) {
      const double width = std::isfinite(p.upper[i] - p.lower[i]) ? p.upper[i] - p.lower[i] : std::abs(x0[i]) + s[i];
      start[i] = std::clamp(x0[i] + 0.05 * width * normal(rng), p.lower[i], p.upper[i]);
    }
    Solution trial = solve_once(p, start, o);
    trial.restarts = k;
    if (better(trial, best, o.feasibility_tol)) best = std::move(trial);
    if (best.converged()) break;
  }
  return best;
}

namespace {

double relative_errors(const Vector& analytic, const Vector& fd) {
  const double floor = std::max(1e-2 * fd.lpNorm<Eigen::Infinity>(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < fd.size(); ++i) {
    const double denom = std::max({std::abs(fd[i]), std::abs(analytic[i]), floor});
    worst = std::max(worst, std::abs(analytic[i] - fd[i]) / denom);
  }
  return worst;
}

void central_differences(const Problem& p, const Vector& x, double step, Vector& grad, Matrix& jac) {
  const Eigen::Index n = x.size(), m = p.constraint_count();
  const Vector s = scale_of(p);
  grad.resize(n);
  jac.resize(m, n);
  Evaluation plus, minus;
  Vector xp = x, xm = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = step * s[i];
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    evaluate_values(p, xp, plus);
    evaluate_values(p, xm, minus);
    grad[i] = (plus.objective - minus.objective) / (2.0 * h);
    if (m > 0) jac.col(i) = (plus.constraints - minus.constraints) / (2.0 * h);
    xp[i] = xm[i] = x[i];
  }
}

}  // namespace

double check_gradient(const Problem& p, const Vector& x, double step) {
  p.validate();
  Evaluation e;
  p.evaluate(x, true, e);
  Vector grad;
  Matrix jac;
  central_differences(p, x, step, grad, jac);
  return relative_errors(e.gradient, grad);
}

double check_jacobian(const Problem& p, const Vector& x, double step) {
  p.validate();
  Evaluation e;
  p.evaluate(x, true, e);
  Vector grad;
  Matrix jac;
  central_differences(p, x, step, grad, jac);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < jac.rows(); ++r)
    worst = std::max(worst, relative_errors(e.jacobian.row(r).transpose(), jac.row(r).transpose()));
  return worst;
}

}  // namespace hkt::nlp
