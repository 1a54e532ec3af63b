#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dham/solver.hpp"

namespace dham {

/// q+ + c q + q- = -A cos t + B sin t and p+ + c p + p- = A sin t + B cos t,
/// with c in {0, 2}.
struct SumFormRelation {
  double c_mid = 0.0;
  double A = 0.0;
  double B = 0.0;

  double g_q(double t) const;
  double g_p(double t) const;
};

/// A and B from the relations at base time t0 - tau, where all three points
/// lie in the history.
std::pair<double, double> recover_constants(const History& hist, double c_mid);

struct RecursionResult {
  Trajectory trajectory;
  /// Largest jump of q or p across a knot.
  double max_seam_jump = 0.0;
  std::vector<std::string> warnings;
};

/// Solution continued from the history by the relations alone, on the same
/// grid step_hamiltonian uses.
RecursionResult recurse(const SumFormRelation& rel, const History& hist, double t_end,
                        int nodes_per_delay);

/// max |q+ + c q + q- - g_q|, |p+ + c p + p- - g_p| over nodes with both shifts.
double relation_residual(const Trajectory& traj, const SumFormRelation& rel);

struct ComponentDiff {
  double max = 0.0;
  double rms = 0.0;
};

struct ComparisonReport {
  ComponentDiff q;
  ComponentDiff p;
  ComponentDiff qd;
  ComponentDiff pd;
  std::size_t nodes = 0;
};

/// Node-by-node differences over t in [t_from, t_to]. Channels that are NaN in
/// either trajectory are skipped.
ComparisonReport compare(const Trajectory& a, const Trajectory& b, double t_from, double t_to);
ComparisonReport compare(const Trajectory& a, const Trajectory& b);

}  // namespace dham
