#include "dham/recursion.hpp"

#include <cmath>
#include <limits>

#include "dham/error.hpp"

namespace dham {

double SumFormRelation::g_q(double t) const { return -A * std::cos(t) + B * std::sin(t); }
double SumFormRelation::g_p(double t) const { return A * std::sin(t) + B * std::cos(t); }

namespace {

double at_time(const Expr& e, double t, double tau) { return eval(e, JetPoint(t, tau)); }

void check_c_mid(double c) {
  if (c != 0.0 && c != 2.0) throw DomainError("the middle coefficient must be 0 or 2");
}

}  // namespace

std::pair<double, double> recover_constants(const History& hist, double c_mid) {
  check_c_mid(c_mid);
  const double tau = hist.tau;
  const double s = hist.t0 - tau;
  const auto sum = [&](const Expr& f) {
    return at_time(f, hist.t0, tau) + c_mid * at_time(f, s, tau) + at_time(f, s - tau, tau);
  };
  const double sq = sum(hist.q);
  const double sp = sum(hist.p);
  // [-cos s  sin s; sin s  cos s] (A, B) = (sq, sp); the matrix is orthogonal.
  const double A = -std::cos(s) * sq + std::sin(s) * sp;
  const double B = std::sin(s) * sq + std::cos(s) * sp;
  return {A, B};
}

RecursionResult recurse(const SumFormRelation& rel, const History& hist, double t_end,
                        int nodes_per_delay) {
  check_c_mid(rel.c_mid);
  const long delays = std::lround((t_end - hist.t0) / hist.tau);
  if (delays < 1 || std::abs(hist.t0 + static_cast<double>(delays) * hist.tau - t_end) >
                        1e-9 * (1.0 + std::abs(t_end))) {
    throw DomainError("the horizon t_end - t0 must be a positive whole number of delays");
  }
  RecursionResult out{Trajectory(hist.t0, hist.tau, nodes_per_delay, static_cast<int>(delays) + 2), 0.0, {}};
  Trajectory& tr = out.trajectory;
  const double tau = hist.tau;
  const int n = nodes_per_delay;
  const Expr dq = total_derivative(hist.q), ddq = total_derivative(dq);
  const Expr dp = total_derivative(hist.p), ddp = total_derivative(dp);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i <= n; ++i) {
      const double t = tr.segment_time(k, i);
      NodeState& s = tr.at(k, i);
      s.q = at_time(hist.q, t, tau);
      s.p = at_time(hist.p, t, tau);
      s.qd = at_time(dq, t, tau);
      s.pd = at_time(dp, t, tau);
      s.qdd = at_time(ddq, t, tau);
      s.pdd = at_time(ddp, t, tau);
    }
  }
  const double c = rel.c_mid;
  for (int k = 2; k < tr.segment_count(); ++k) {
    for (int i = 0; i <= n; ++i) {
      const double s = tr.segment_time(k, i) - tau;
      const NodeState& a = tr.at(k - 1, i);
      const NodeState& b = tr.at(k - 2, i);
      NodeState& x = tr.at(k, i);
      // g_q' = g_p and g_p' = -g_q.
      x.q = rel.g_q(s) - c * a.q - b.q;
      x.p = rel.g_p(s) - c * a.p - b.p;
      x.qd = rel.g_p(s) - c * a.qd - b.qd;
      x.pd = -rel.g_q(s) - c * a.pd - b.pd;
      x.qdd = -rel.g_q(s) - c * a.qdd - b.qdd;
      x.pdd = -rel.g_p(s) - c * a.pdd - b.pdd;
    }
    const NodeState& left = tr.at(k - 1, n);
    const NodeState& right = tr.at(k, 0);
    out.max_seam_jump = std::max(
        {out.max_seam_jump, std::abs(left.q - right.q), std::abs(left.p - right.p)});
  }
  if (out.max_seam_jump > 1e-9) {
    out.warnings.push_back("the history does not satisfy the relations at the seam (jump " +
                           std::to_string(out.max_seam_jump) + ")");
  }
  return out;
}

double relation_residual(const Trajectory& traj, const SumFormRelation& rel) {
  const std::size_t n = static_cast<std::size_t>(traj.nodes_per_delay());
  double worst = 0.0;
  for (std::size_t g = n; g + n < traj.node_count(); ++g) {
    const NodeState& m = traj.node(g - n);
    const NodeState& z = traj.node(g);
    const NodeState& p = traj.node(g + n);
    const double t = traj.time(g);
    worst = std::max({worst, std::abs(p.q + rel.c_mid * z.q + m.q - rel.g_q(t)),
                      std::abs(p.p + rel.c_mid * z.p + m.p - rel.g_p(t))});
  }
  return worst;
}

ComparisonReport compare(const Trajectory& a, const Trajectory& b, double t_from, double t_to) {
  if (a.nodes_per_delay() != b.nodes_per_delay() || a.node_count() != b.node_count() ||
      a.t0() != b.t0() || a.tau() != b.tau()) {
    throw DomainError("trajectories live on different grids");
  }
  ComparisonReport r;
  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  Acc aq, ap, aqd, apd;
  const auto add = [](ComponentDiff& d, Acc& acc, double x, double y) {
    if (std::isnan(x) || std::isnan(y)) return;
    const double e = std::abs(x - y);
    d.max = std::max(d.max, e);
    acc.sum += e * e;
    ++acc.count;
  };
  for (std::size_t g = 0; g < a.node_count(); ++g) {
    const double t = a.time(g);
    if (t < t_from - 1e-12 || t > t_to + 1e-12) continue;
    const NodeState& x = a.node(g);
    const NodeState& y = b.node(g);
    add(r.q, aq, x.q, y.q);
    add(r.p, ap, x.p, y.p);
    add(r.qd, aqd, x.qd, y.qd);
    add(r.pd, apd, x.pd, y.pd);
    ++r.nodes;
  }
  const auto finish = [](ComponentDiff& d, const Acc& acc) {
    d.rms = acc.count ? std::sqrt(acc.sum / static_cast<double>(acc.count)) : 0.0;
  };
  finish(r.q, aq);
  finish(r.p, ap);
  finish(r.qd, aqd);
  finish(r.pd, apd);
  return r;
}

ComparisonReport compare(const Trajectory& a, const Trajectory& b) {
  return compare(a, b, -std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity());
}

}  // namespace dham
