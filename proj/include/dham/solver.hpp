#pragma once

#include <cstddef>
#include <limits>
#include <ostream>
#include <vector>

#include "dham/jet.hpp"
#include "dham/model.hpp"

namespace dham {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Values and derivative samples at one grid node. Channels a method does not
/// produce stay NaN.
struct NodeState {
  double q = kNaN;
  double p = kNaN;
  double qd = kNaN;
  double pd = kNaN;
  double qdd = kNaN;
  double pdd = kNaN;
  double qddd = kNaN;
};

/// Piecewise solution on the grid t0 - 2 tau + i h, h = tau / N. Segment k
/// covers [t0 + (k - 2) tau, t0 + (k - 1) tau] with N + 1 nodes; segments 0
/// and 1 hold the history. Neighbouring segments share their knot, and the
/// flattened view reports the value from the left segment there.
class Trajectory {
 public:
  Trajectory(double t0, double tau, int nodes_per_delay, int segments);

  double t0() const noexcept { return t0_; }
  double tau() const noexcept { return tau_; }
  double h() const noexcept { return tau_ / n_; }
  int nodes_per_delay() const noexcept { return n_; }
  int segment_count() const noexcept { return static_cast<int>(segments_.size()); }
  double t_end() const { return time(node_count() - 1); }

  std::size_t node_count() const;
  double time(std::size_t g) const;
  const NodeState& node(std::size_t g) const;

  double segment_time(int k, int i) const;
  NodeState& at(int k, int i) { return segments_.at(k).at(i); }
  const NodeState& at(int k, int i) const { return segments_.at(k).at(i); }
  const std::vector<NodeState>& segment(int k) const { return segments_.at(k); }

  /// Jet with base time time(g): shifts -1, 0, +1 come from nodes g - N, g,
  /// g + N where they exist. Missing or NaN channels stay undefined.
  JetPoint jet(std::size_t g) const;

 private:
  double t0_;
  double tau_;
  int n_;
  std::vector<std::vector<NodeState>> segments_;
};

/// Initial functions on [t0 - 2 tau, t0], expressions in t (and tau).
struct History {
  double t0 = 0.0;
  double tau = 1.0;
  Expr q;
  Expr p;
};

/// Method of steps on the canonical delay equations with fixed-step RK4.
/// Lagged values come from cubic Hermite interpolation of the stored samples.
Trajectory step_hamiltonian(const DelayHamiltonian& h, const History& hist, double t_end,
                            int nodes_per_delay);

/// Same scheme on the Elsgolts equation of a quadratic Lagrangian. Only q and
/// its derivatives are produced; p stays NaN.
Trajectory step_elsgolts(const QuadraticLagrangian& l, const History& hist, double t_end,
                         int nodes_per_delay);

enum class DerivativeSource {
  /// Samples stored by the solver.
  Stored,
  /// Fourth-order differences of q and p within each segment; second
  /// derivatives from differences of the stored first derivatives.
  FiniteDifference,
};

struct ResidualRow {
  double t;
  NodeState state;
  double rp = kNaN;
  double rq = kNaN;
  double rt = kNaN;
};

std::vector<ResidualRow> residual_report(const Trajectory& traj, const DelayHamiltonian& h,
                                         DerivativeSource source);

struct ResidualSummary {
  double max_rp = 0.0;
  double max_rq = 0.0;
  double max_rt = 0.0;
};

ResidualSummary summarize(const std::vector<ResidualRow>& rows);

/// Header t,q,p,qdot,pdot,Rp,Rq,Rt and one row per node, 17 significant digits.
void write_csv(std::ostream& out, const std::vector<ResidualRow>& rows);

/// Fourth-order derivative of equally spaced samples at index i.
double fd_derivative(const std::vector<double>& f, std::size_t i, double h);

}  // namespace dham
