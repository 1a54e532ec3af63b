#include "dham/solver.hpp"

#include <cmath>
#include <cstdio>

#include "dham/error.hpp"

namespace dham {

Trajectory::Trajectory(double t0, double tau, int nodes_per_delay, int segments)
    : t0_(t0), tau_(tau), n_(nodes_per_delay) {
  if (!(tau > 0.0)) throw DomainError("the delay must be positive");
  if (nodes_per_delay < 8) throw DomainError("at least 8 nodes per delay are required");
  if (segments < 2) throw DomainError("a trajectory holds at least the two history segments");
  segments_.assign(static_cast<std::size_t>(segments),
                   std::vector<NodeState>(static_cast<std::size_t>(nodes_per_delay) + 1));
}

std::size_t Trajectory::node_count() const {
  return segments_.size() * static_cast<std::size_t>(n_) + 1;
}

double Trajectory::segment_time(int k, int i) const {
  return t0_ + static_cast<double>((k - 2) * n_ + i) * h();
}

double Trajectory::time(std::size_t g) const {
  return t0_ + (static_cast<double>(g) - 2.0 * n_) * h();
}

const NodeState& Trajectory::node(std::size_t g) const {
  if (g >= node_count()) throw DomainError("node index out of range");
  if (g == 0) return segments_[0][0];
  const std::size_t n = static_cast<std::size_t>(n_);
  return segments_[(g - 1) / n][(g - 1) % n + 1];
}

namespace {

void put(JetPoint& j, Symbol s, double v) {
  if (!std::isnan(v)) j.set(s, v);
}

void put_state(JetPoint& j, int shift, const NodeState& n) {
  put(j, Symbol{Base::Q, shift, 0}, n.q);
  put(j, Symbol{Base::P, shift, 0}, n.p);
  put(j, Symbol{Base::Q, shift, 1}, n.qd);
  put(j, Symbol{Base::P, shift, 1}, n.pd);
  put(j, Symbol{Base::Q, shift, 2}, n.qdd);
  put(j, Symbol{Base::P, shift, 2}, n.pdd);
}

double hermite_mid(double f0, double d0, double f1, double d1, double h) {
  return 0.5 * (f0 + f1) + h * (d0 - d1) / 8.0;
}

// Lagged state at local position i + c of segment k, c in {0, 1/2, 1}.
NodeState lag(const Trajectory& tr, int k, int i, int half_steps) {
  if (half_steps == 0) return tr.at(k, i);
  if (half_steps == 2) return tr.at(k, i + 1);
  const NodeState& a = tr.at(k, i);
  const NodeState& b = tr.at(k, i + 1);
  const double h = tr.h();
  NodeState m;
  m.q = hermite_mid(a.q, a.qd, b.q, b.qd, h);
  m.p = hermite_mid(a.p, a.pd, b.p, b.pd, h);
  m.qd = hermite_mid(a.qd, a.qdd, b.qd, b.qdd, h);
  m.pd = hermite_mid(a.pd, a.pdd, b.pd, b.pdd, h);
  m.qdd = hermite_mid(a.qdd, a.qddd, b.qdd, b.qddd, h);
  return m;
}

int whole_delays(const History& hist, double t_end) {
  if (!(hist.tau > 0.0)) throw DomainError("the delay must be positive");
  const double k = (t_end - hist.t0) / hist.tau;
  const long n = std::lround(k);
  if (n < 1 || std::abs(hist.t0 + static_cast<double>(n) * hist.tau - t_end) >
                   1e-9 * (1.0 + std::abs(t_end))) {
    throw DomainError("the horizon t_end - t0 must be a positive whole number of delays");
  }
  return static_cast<int>(n);
}

void check_history_expr(const Expr& e, const char* what) {
  if (!only_uses(e, {sym::t})) {
    throw DomainError(std::string("the ") + what + " history may depend on t and tau only: " +
                      to_string(e));
  }
}

void check_finite(double v, double t) {
  if (!std::isfinite(v)) {
    throw NumericError("non-finite value at t = " + std::to_string(t));
  }
}

double at_time(const Expr& e, double t, double tau) { return eval(e, JetPoint(t, tau)); }

}  // namespace

JetPoint Trajectory::jet(std::size_t g) const {
  JetPoint j(time(g), tau_);
  const std::size_t n = static_cast<std::size_t>(n_);
  put_state(j, 0, node(g));
  if (g >= n) put_state(j, -1, node(g - n));
  if (g + n < node_count()) put_state(j, +1, node(g + n));
  return j;
}

Trajectory step_hamiltonian(const DelayHamiltonian& h, const History& hist, double t_end,
                            int nodes_per_delay) {
  h.validate();
  check_history_expr(hist.q, "q");
  check_history_expr(hist.p, "p");
  const double a1 = h.alphas[0].value();
  const double a23 = h.alphas[1].value() + h.alphas[2].value();
  const double a4 = h.alphas[3].value();
  if (a1 == 0.0 || a4 == 0.0) {
    throw DomainError("stepping needs alpha1 != 0 and alpha4 != 0");
  }
  const int delays = whole_delays(hist, t_end);
  Trajectory tr(hist.t0, hist.tau, nodes_per_delay, delays + 2);
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

  const Expr both = h.H + shift(h.H, +1);
  const Expr fp = partial(both, sym::p);
  const Expr fq = partial(both, sym::q);
  const Expr dfp = total_derivative(fp);
  const Expr dfq = total_derivative(fq);

  // Derivatives at time t in segment k from the relations at base t - tau.
  const auto rates = [&](int k, int i, int half_steps, double q, double p) {
    const NodeState l1 = lag(tr, k - 1, i, half_steps);
    const NodeState l2 = lag(tr, k - 2, i, half_steps);
    const double s = tr.segment_time(k, i) + 0.5 * half_steps * tr.h() - tau;
    JetPoint j(s, tau);
    put_state(j, -1, NodeState{l2.q, l2.p});
    put_state(j, 0, NodeState{l1.q, l1.p});
    put_state(j, +1, NodeState{q, p});
    const double qd = (eval(fp, j) - a23 * l1.qd - a4 * l2.qd) / a1;
    const double pd = (-eval(fq, j) - a23 * l1.pd - a1 * l2.pd) / a4;
    return std::pair<double, double>{qd, pd};
  };

  const auto finish_node = [&](int k, int i) {
    NodeState& s = tr.at(k, i);
    const NodeState& l1 = tr.at(k - 1, i);
    const NodeState& l2 = tr.at(k - 2, i);
    std::tie(s.qd, s.pd) = rates(k, i, 0, s.q, s.p);
    JetPoint j(tr.segment_time(k, i) - tau, tau);
    put_state(j, -1, NodeState{l2.q, l2.p, l2.qd, l2.pd});
    put_state(j, 0, NodeState{l1.q, l1.p, l1.qd, l1.pd});
    put_state(j, +1, NodeState{s.q, s.p, s.qd, s.pd});
    s.qdd = (eval(dfp, j) - a23 * l1.qdd - a4 * l2.qdd) / a1;
    s.pdd = (-eval(dfq, j) - a23 * l1.pdd - a1 * l2.pdd) / a4;
    const double t = tr.segment_time(k, i);
    for (double v : {s.q, s.p, s.qd, s.pd, s.qdd, s.pdd}) check_finite(v, t);
  };

  const double hh = tr.h();
  for (int k = 2; k < tr.segment_count(); ++k) {
    NodeState& first = tr.at(k, 0);
    first.q = tr.at(k - 1, n).q;
    first.p = tr.at(k - 1, n).p;
    finish_node(k, 0);
    for (int i = 0; i < n; ++i) {
      const NodeState& s = tr.at(k, i);
      const auto [k1q, k1p] = std::pair<double, double>{s.qd, s.pd};
      const auto [k2q, k2p] = rates(k, i, 1, s.q + hh / 2 * k1q, s.p + hh / 2 * k1p);
      const auto [k3q, k3p] = rates(k, i, 1, s.q + hh / 2 * k2q, s.p + hh / 2 * k2p);
      const auto [k4q, k4p] = rates(k, i, 2, s.q + hh * k3q, s.p + hh * k3p);
      NodeState& next = tr.at(k, i + 1);
      next.q = s.q + hh / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
      next.p = s.p + hh / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
      finish_node(k, i + 1);
    }
  }
  return tr;
}

Trajectory step_elsgolts(const QuadraticLagrangian& l, const History& hist, double t_end,
                         int nodes_per_delay) {
  l.validate();
  check_history_expr(hist.q, "q");
  const double alpha = l.alpha.value();
  const double beta = l.beta.value();
  const double gamma = l.gamma.value();
  const int delays = whole_delays(hist, t_end);
  Trajectory tr(hist.t0, hist.tau, nodes_per_delay, delays + 2);
  const double tau = hist.tau;
  const int n = nodes_per_delay;

  const Expr dq = total_derivative(hist.q);
  const Expr ddq = total_derivative(dq);
  const Expr dddq = total_derivative(ddq);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i <= n; ++i) {
      const double t = tr.segment_time(k, i);
      NodeState& s = tr.at(k, i);
      s.q = at_time(hist.q, t, tau);
      s.qd = at_time(dq, t, tau);
      s.qdd = at_time(ddq, t, tau);
      s.qddd = at_time(dddq, t, tau);
    }
  }

  const Expr g = partial(l.phi + shift(l.phi, +1), sym::q);
  const Expr dg = total_derivative(g);

  const auto accel = [&](int k, int i, int half_steps, double q) {
    const NodeState l1 = lag(tr, k - 1, i, half_steps);
    const NodeState l2 = lag(tr, k - 2, i, half_steps);
    JetPoint j(tr.segment_time(k, i) + 0.5 * half_steps * tr.h() - tau, tau);
    j.set(sym::qm, l2.q);
    j.set(sym::q, l1.q);
    j.set(sym::qp, q);
    return -((alpha + gamma) * l1.qdd + beta * l2.qdd + eval(g, j)) / beta;
  };

  const auto finish_node = [&](int k, int i) {
    NodeState& s = tr.at(k, i);
    const NodeState& l1 = tr.at(k - 1, i);
    const NodeState& l2 = tr.at(k - 2, i);
    s.qdd = accel(k, i, 0, s.q);
    JetPoint j(tr.segment_time(k, i) - tau, tau);
    j.set(sym::qm, l2.q);
    j.set(sym::q, l1.q);
    j.set(sym::qp, s.q);
    j.set(sym::qdm, l2.qd);
    j.set(sym::qd, l1.qd);
    j.set(sym::qdp, s.qd);
    s.qddd = -((alpha + gamma) * l1.qddd + beta * l2.qddd + eval(dg, j)) / beta;
    const double t = tr.segment_time(k, i);
    for (double v : {s.q, s.qd, s.qdd, s.qddd}) check_finite(v, t);
  };

  const double hh = tr.h();
  for (int k = 2; k < tr.segment_count(); ++k) {
    NodeState& first = tr.at(k, 0);
    first.q = tr.at(k - 1, n).q;
    first.qd = tr.at(k - 1, n).qd;
    finish_node(k, 0);
    for (int i = 0; i < n; ++i) {
      const NodeState& s = tr.at(k, i);
      const double k1q = s.qd, k1v = s.qdd;
      const double k2q = s.qd + hh / 2 * k1v;
      const double k2v = accel(k, i, 1, s.q + hh / 2 * k1q);
      const double k3q = s.qd + hh / 2 * k2v;
      const double k3v = accel(k, i, 1, s.q + hh / 2 * k2q);
      const double k4q = s.qd + hh * k3v;
      const double k4v = accel(k, i, 2, s.q + hh * k3q);
      NodeState& next = tr.at(k, i + 1);
      next.q = s.q + hh / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
      next.qd = s.qd + hh / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
      finish_node(k, i + 1);
    }
  }
  return tr;
}

double fd_derivative(const std::vector<double>& f, std::size_t i, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw DomainError("fourth-order differences need at least five samples");
  const auto fwd = [&](std::size_t j, double sign) {
    const auto v = [&](std::size_t o) { return sign > 0 ? f[j + o] : f[j - o]; };
    return sign * (-25 * v(0) + 48 * v(1) - 36 * v(2) + 16 * v(3) - 3 * v(4)) / (12 * h);
  };
  const auto near = [&](std::size_t j, double sign) {
    const auto v = [&](int o) {
      return sign > 0 ? f[static_cast<std::size_t>(static_cast<long>(j) + o)]
                      : f[static_cast<std::size_t>(static_cast<long>(j) - o)];
    };
    return sign * (-3 * v(-1) - 10 * v(0) + 18 * v(1) - 6 * v(2) + v(3)) / (12 * h);
  };
  if (i == 0) return fwd(0, 1.0);
  if (i == n - 1) return fwd(n - 1, -1.0);
  if (i == 1) return near(1, 1.0);
  if (i == n - 2) return near(n - 2, -1.0);
  return (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
}

namespace {

bool covers(const JetPoint& j, const SymbolSet& needed) {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (needed[i] && !j.has(symbol_at(i))) return false;
  }
  return true;
}

Trajectory with_difference_derivatives(const Trajectory& tr) {
  Trajectory out = tr;
  const double h = tr.h();
  for (int k = 0; k < tr.segment_count(); ++k) {
    const auto& seg = tr.segment(k);
    const auto column = [&](double NodeState::*m) {
      std::vector<double> v;
      v.reserve(seg.size());
      for (const auto& s : seg) v.push_back(s.*m);
      return v;
    };
    const auto q = column(&NodeState::q), p = column(&NodeState::p);
    const auto qd = column(&NodeState::qd), pd = column(&NodeState::pd);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      NodeState& s = out.at(k, static_cast<int>(i));
      s.qd = fd_derivative(q, i, h);
      s.pd = fd_derivative(p, i, h);
      s.qdd = fd_derivative(qd, i, h);
      s.pdd = fd_derivative(pd, i, h);
    }
  }
  return out;
}

}  // namespace

std::vector<ResidualRow> residual_report(const Trajectory& traj, const DelayHamiltonian& h,
                                         DerivativeSource source) {
  const Residuals r = variational_residuals(h);
  const Trajectory tr =
      source == DerivativeSource::Stored ? traj : with_difference_derivatives(traj);
  const SymbolSet need_p = symbols_of(r.rp), need_q = symbols_of(r.rq), need_t = symbols_of(r.rt);
  std::vector<ResidualRow> rows;
  rows.reserve(tr.node_count());
  for (std::size_t g = 0; g < tr.node_count(); ++g) {
    const JetPoint j = tr.jet(g);
    ResidualRow row{tr.time(g), tr.node(g)};
    if (covers(j, need_p)) row.rp = eval(r.rp, j);
    if (covers(j, need_q)) row.rq = eval(r.rq, j);
    if (covers(j, need_t)) row.rt = eval(r.rt, j);
    rows.push_back(row);
  }
  return rows;
}

ResidualSummary summarize(const std::vector<ResidualRow>& rows) {
  ResidualSummary s;
  const auto upd = [](double& m, double v) {
    if (!std::isnan(v)) m = std::max(m, std::abs(v));
  };
  for (const auto& r : rows) {
    upd(s.max_rp, r.rp);
    upd(s.max_rq, r.rq);
    upd(s.max_rt, r.rt);
  }
  return s;
}

void write_csv(std::ostream& out, const std::vector<ResidualRow>& rows) {
  out << "t,q,p,qdot,pdot,Rp,Rq,Rt\n";
  char buf[64];
  for (const auto& r : rows) {
    bool first = true;
    for (double v : {r.t, r.state.q, r.state.p, r.state.qd, r.state.pd, r.rp, r.rq, r.rt}) {
      if (!first) out << ',';
      first = false;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace dham
