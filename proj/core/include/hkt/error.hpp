#pragma once

#include <stdexcept>
#include <string>

namespace hkt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or invalid configuration (bad bounds, horizons, filter settings...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical solver could not produce a solution.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// The BEM inflow-angle residual has no sign change on any search bracket.
class BracketFailure : public SolverFailure {
 public:
  BracketFailure(const std::string& what, double lo, double hi, double f_lo, double f_hi)
      : SolverFailure(what), lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double residual_lo() const noexcept { return f_lo_; }
  double residual_hi() const noexcept { return f_hi_; }

 private:
  double lo_, hi_, f_lo_, f_hi_;
};

/// Time integration produced a non-finite state.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace hkt
