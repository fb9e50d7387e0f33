#include "hkt/polar.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "csv.hpp"

namespace hkt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Viterna {
  double a1, a2, b1, b2;

  Viterna(double stall_deg, double cl_s, double cd_s, double cd_max) {
    const double s = std::sin(stall_deg * kDeg);
    const double c = std::cos(stall_deg * kDeg);
    a1 = 0.5 * cd_max;
    b1 = cd_max;
    a2 = (cl_s - cd_max * s * c) * s / (c * c);
    b2 = (cd_s - cd_max * s * s) / c;
  }

  PolarSample at(double alpha_deg) const {
    const double a = alpha_deg * kDeg;
    const double s = std::sin(a);
    const double c = std::cos(a);
    return {a1 * std::sin(2.0 * a) + a2 * c * c / s, b1 * s * s + b2 * c};
  }
};

PolarSample attached(double alpha_deg, const DefaultPolarParameters& p) {
  const double lift = 2.0 * std::numbers::pi * (alpha_deg - p.zero_lift_alpha_deg) * kDeg;
  const double cl = std::min(lift, p.cl_max);
  return {cl, p.cd_min + p.cd_lift_factor * cl * cl};
}

}  // namespace

namespace {

// Fritsch-Carlson node slopes with the weighted harmonic mean used for
// non-uniform grids; zero at local extrema so the cubic never overshoots.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), m(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  m.front() = delta.front();
  m.back() = delta.back();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
    m[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  return m;
}

}  // namespace

AirfoilPolar::AirfoilPolar(std::vector<double> alpha_deg, std::vector<double> cl,
                           std::vector<double> cd, Interpolation rule)
    : alpha_(std::move(alpha_deg)), cl_(std::move(cl)), cd_(std::move(cd)), rule_(rule) {
  if (alpha_.size() < 2 || cl_.size() != alpha_.size() || cd_.size() != alpha_.size())
    throw DomainError("polar grids must have equal length >= 2");
  for (std::size_t i = 0; i + 1 < alpha_.size(); ++i)
    if (!(alpha_[i + 1] > alpha_[i])) throw DomainError("polar alpha grid must be strictly ascending");
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (!std::isfinite(alpha_[i]) || !std::isfinite(cl_[i]) || !std::isfinite(cd_[i]))
      throw DomainError("polar contains non-finite values");
    if (cd_[i] < 0.0) throw DomainError("polar drag coefficient must be non-negative");
  }
  if (alpha_.front() > -180.0 || alpha_.back() < 180.0)
    throw DomainError("polar alpha grid must cover [-180, 180] deg");
  if (rule_ == Interpolation::MonotoneCubic) {
    dcl_ = monotone_slopes(alpha_, cl_);
    dcd_ = monotone_slopes(alpha_, cd_);
  }
}

std::size_t AirfoilPolar::interval(double alpha_deg) const {
  auto it = std::upper_bound(alpha_.begin(), alpha_.end(), alpha_deg);
  std::size_t i = it == alpha_.begin() ? 0 : static_cast<std::size_t>(it - alpha_.begin()) - 1;
  return std::min(i, alpha_.size() - 2);
}

PolarSample interpolate_polar(const AirfoilPolar& polar, double alpha_deg) {
  PolarSample s;
  interpolate_polar(polar, alpha_deg, s.cl, s.cd);
  return s;
}

PolarSample default_polar_value(double alpha_deg, const DefaultPolarParameters& p) {
  if (!(alpha_deg >= -180.0 && alpha_deg <= 180.0))
    throw DomainError("angle of attack outside [-180, 180] deg");
  if (alpha_deg >= p.negative_stall_alpha_deg && alpha_deg <= p.stall_alpha_deg) return attached(alpha_deg, p);

  const double flat_a1 = 0.5 * p.cd_max;
  if (std::abs(alpha_deg) > 90.0) {
    const double a = alpha_deg * kDeg;
    const double s = std::sin(a);
    const double c = std::cos(a);
    return {flat_a1 * std::sin(2.0 * a), p.cd_max * s * s + p.cd_min * c * c};
  }
  if (alpha_deg > 0.0) {
    const PolarSample st = attached(p.stall_alpha_deg, p);
    return Viterna(p.stall_alpha_deg, st.cl, st.cd, p.cd_max).at(alpha_deg);
  }
  // Negative stall: mirror the Viterna construction about zero incidence.
  const PolarSample st = attached(p.negative_stall_alpha_deg, p);
  const PolarSample m = Viterna(-p.negative_stall_alpha_deg, -st.cl, st.cd, p.cd_max).at(-alpha_deg);
  return {-m.cl, m.cd};
}

AirfoilPolar default_polar(const DefaultPolarParameters& p, AirfoilPolar::Interpolation rule) {
  if (!(p.grid_step_deg > 0.0)) throw DomainError("polar grid step must be positive");
  const auto n = static_cast<std::size_t>(std::llround(360.0 / p.grid_step_deg));
  std::vector<double> alpha(n + 1), cl(n + 1), cd(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    alpha[i] = i == n ? 180.0 : -180.0 + static_cast<double>(i) * p.grid_step_deg;
    const PolarSample s = default_polar_value(alpha[i], p);
    cl[i] = s.cl;
    cd[i] = s.cd;
  }
  return AirfoilPolar(std::move(alpha), std::move(cl), std::move(cd), rule);
}

AirfoilPolar parse_polar_csv(std::istream& in, AirfoilPolar::Interpolation rule) {
  const csv::Table table = csv::read(in);
  if (table.header != std::vector<std::string>{"alpha_deg", "cl", "cd"})
    throw DomainError("polar CSV header must be alpha_deg,cl,cd");
  std::vector<double> alpha, cl, cd;
  for (const auto& row : table.rows) {
    alpha.push_back(row[0]);
    cl.push_back(row[1]);
    cd.push_back(row[2]);
  }
  return AirfoilPolar(std::move(alpha), std::move(cl), std::move(cd), rule);
}

AirfoilPolar read_polar_csv(const std::filesystem::path& path, AirfoilPolar::Interpolation rule) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open polar file " + path.string());
  return parse_polar_csv(in, rule);
}

void write_polar_csv(std::ostream& out, const AirfoilPolar& polar) {
  out << "alpha_deg,cl,cd\n" << std::setprecision(17);
  for (std::size_t i = 0; i < polar.size(); ++i)
    out << polar.alpha_deg()[i] << ',' << polar.cl()[i] << ',' << polar.cd()[i] << '\n';
}

}  // namespace hkt
