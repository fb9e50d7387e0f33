#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hkt/bem.hpp"
#include "hkt/control.hpp"
#include "hkt/flow.hpp"
#include "hkt/geometry.hpp"
#include "hkt/nlp.hpp"
#include "hkt/simulate.hpp"

namespace hkt {

/// Segment boundaries on [0, T]. Each segment carries the three Lobatto
/// nodes {-1, 0, 1}; neighbouring segments share their end node, so a grid of
/// N segments has 2N + 1 nodes.
struct CollocationGrid {
  std::vector<double> boundaries;

  static CollocationGrid uniform(double horizon, int segments);

  std::size_t segments() const { return boundaries.empty() ? 0 : boundaries.size() - 1; }
  std::size_t node_count() const { return 2 * segments() + 1; }
  std::vector<double> node_times() const;
  void validate() const;
};

/// Hermite-Simpson defects of x' = f, two rows per segment k:
///   x_{k+1} - x_k - h/6 (f_k + 4 f_mid + f_{k+1})
///   x_mid - (x_k + x_{k+1})/2 - h/8 (f_k - f_{k+1})
void collocation_defects(const CollocationGrid& grid, std::span<const double> x, std::span<const double> f,
                         std::span<double> out);

struct TranscriptionOptions {
  int segments = 50;
  std::optional<double> u_max;  // unbounded above when absent
  bool free_geometry = false;
  GeometryBounds bounds;
  MaterialProperties material;
  double omega_scale = 10.0;  // rad/s
  double chord_scale = 1.0;   // m
  double twist_scale = 30.0;  // deg
  /// Weight on the squared scaled deviation of each midpoint control from the
  /// mean of its segment's end controls. Separated Hermite-Simpson leaves the
  /// mode (u_end, u_mid) -> (u_end + 2d, u_mid - d) free along singular arcs.
  double control_smoothing = 0.1;
};

/// Open-loop optimal control of the rotor speed, optionally with the blade
/// chords and twists as additional unknowns. Decision vector:
///   [omega_0 .. omega_{2N}, u_0 .. u_{2N}, chord_0 .. chord_{M-1}, twist_0 .. twist_{M-1}]
/// where the geometry block is present only when the geometry is free.
/// The objective is -J / J_ref with J the Simpson quadrature of Q omega and
/// J_ref the ideal-rotor energy of one segment.
///
/// The object handed out by `nlp()` refers to this instance, which must outlive it.
class TranscribedProblem {
 public:
  TranscribedProblem(RotorModel rotor, FlowProfile flow, double horizon, TranscriptionOptions options = {});

  const CollocationGrid& grid() const { return grid_; }
  const std::vector<double>& times() const { return times_; }
  const TranscriptionOptions& options() const { return options_; }
  const RotorModel& rotor() const { return rotor_; }
  const FlowProfile& flow() const { return flow_; }
  double horizon() const { return horizon_; }

  std::size_t nodes() const { return times_.size(); }
  std::size_t omega_index(std::size_t node) const { return node; }
  std::size_t u_index(std::size_t node) const { return nodes() + node; }
  std::size_t chord_index(std::size_t seg) const { return 2 * nodes() + seg; }
  std::size_t twist_index(std::size_t seg) const { return 2 * nodes() + blade_segments() + seg; }
  std::size_t blade_segments() const { return options_.free_geometry ? rotor_.geometry().segments.size() : 0; }
  std::size_t size() const { return 2 * nodes() + 2 * blade_segments(); }

  /// One Hermite-Simpson pair per collocation segment.
  std::size_t defect_count() const { return grid_.segments(); }
  std::size_t defect_rows() const { return 2 * grid_.segments(); }
  /// Upper control bound; +infinity when unbounded.
  double u_upper() const { return upper_[static_cast<Eigen::Index>(u_index(0))]; }
  double energy_reference() const { return energy_ref_; }

  const nlp::Vector& lower() const { return lower_; }
  const nlp::Vector& upper() const { return upper_; }
  const nlp::Vector& scale() const { return scale_; }

  nlp::Problem nlp() const;
  void evaluate(const nlp::Vector& x, bool derivatives, nlp::Evaluation& out) const;

  /// Unscaled defects in rad/s, ordered as in `collocation_defects`.
  nlp::Vector defect_residuals(const nlp::Vector& x) const;
  /// Simpson quadrature of Q omega over the nodes, J.
  double energy(const nlp::Vector& x) const;
  BladeGeometry geometry(const nlp::Vector& x) const;
  double inertia(const nlp::Vector& x) const;
  /// omega' at every node.
  std::vector<double> rates(const nlp::Vector& x) const;

  nlp::Vector pack(std::span<const double> omega, std::span<const double> u) const;
  /// Samples a simulation of `law` at the nodes, clipped into the bounds.
  nlp::Vector initial_guess(const ControlLaw& law, double dt = 0.01) const;

 private:
  void check_size(const nlp::Vector& x) const;
  double midpoint_bend(const nlp::Vector& x, std::size_t segment) const;

  RotorModel rotor_;
  FlowProfile flow_;
  double horizon_;
  TranscriptionOptions options_;
  CollocationGrid grid_;
  std::vector<double> times_, velocity_, weights_;
  nlp::Vector lower_, upper_, scale_;
  double energy_ref_ = 1.0;
};

/// Collocation schedule of the control nodes.
OpenLoopSchedule control_schedule(const TranscribedProblem& problem, const nlp::Vector& x);

/// Speed from the piecewise cubic Hermite interpolant through the nodes and
/// their rates; exact at node times.
double state_at(const TranscribedProblem& problem, const nlp::Vector& x, std::span<const double> rates, double t);

/// Samples state and control at multiples of dt; energy by trapezoid on Q omega.
Trajectory extract_trajectory(const TranscribedProblem& problem, const nlp::Vector& x, double dt = 0.01);

struct OlocResult {
  nlp::Solution solution;
  BladeGeometry geometry;
  OpenLoopSchedule schedule;
  Trajectory trajectory;
  double energy = 0.0;  // collocation quadrature
  double max_defect = 0.0;  // scaled
};

OlocResult solve_oloc(const TranscribedProblem& problem, const nlp::Vector& x0, const nlp::Options& options = {},
                      double dt = 0.01);

}  // namespace hkt
