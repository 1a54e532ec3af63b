#include "dham/classical.hpp"

#include <cmath>

#include "dham/error.hpp"
#include "dham/variational.hpp"

namespace dham {

void ClassicalHamiltonian::validate() const {
  if (!only_uses(H, {sym::t, sym::q, sym::p})) {
    throw DomainError("a classical Hamiltonian depends on t, q, p only: " + to_string(H));
  }
}

Residuals classical_residuals(const ClassicalHamiltonian& h) {
  h.validate();
  Residuals r;
  r.rp = Expr(sym::qd) - partial(h.H, sym::p);
  r.rq = -Expr(sym::pd) - partial(h.H, sym::q);
  r.rt = total_derivative(h.H) - partial(h.H, sym::t);
  return r;
}

Expr classical_invariance(const ClassicalHamiltonian& h, const Generator& g) {
  h.validate();
  g.validate();
  return g.nu * Expr(sym::qd) + Expr(sym::p) * total_derivative(g.eta) - apply_prolonged(g, h.H) -
         h.H * total_derivative(g.xi);
}

Expr classical_identity_defect(const ClassicalHamiltonian& h, const Generator& g) {
  const Residuals r = classical_residuals(h);
  const Expr flux = Expr(sym::p) * g.eta - g.xi * h.H;
  return classical_invariance(h, g) -
         (g.xi * r.rt + g.eta * r.rq + g.nu * r.rp + total_derivative(flux));
}

JetPoint classical_on_shell_jet(const ClassicalHamiltonian& h, std::uint64_t seed,
                                std::uint64_t index) {
  JetPoint j = random_jet(seed, index);
  const Expr hp = partial(h.H, sym::p);
  const Expr hq = partial(h.H, sym::q);
  j.set(sym::qd, eval(hp, j));
  j.set(sym::pd, -eval(hq, j));
  j.set(sym::qdd, eval(total_derivative(hp), j));
  j.set(sym::pdd, -eval(total_derivative(hq), j));
  return j;
}

ClassicalIntegral classical_first_integral(const ClassicalHamiltonian& h, const Generator& g,
                                           std::uint64_t seed) {
  ClassicalIntegral out;
  out.integral = Expr(sym::p) * g.eta - g.xi * h.H;
  const Expr inv = classical_invariance(h, g);
  const ZeroCheck check = is_zero_on(
      inv, [&](std::uint64_t i) { return classical_on_shell_jet(h, seed, i); }, kDefaultSamples);
  if (!check.ok) {
    out.invariant_on_shell = false;
    out.warning = "the Hamiltonian is not invariant on solutions; " + to_string(out.integral) +
                  " is not a first integral (" + check.summary() + ")";
  }
  return out;
}

std::pair<Expr, Expr> classical_invariance_variations(const ClassicalHamiltonian& h,
                                                      const Generator& g) {
  const Expr inv = classical_invariance(h, g);
  return {variational_derivative(inv, Base::P), variational_derivative(inv, Base::Q)};
}

void ClassicalLagrangian::validate() const {
  if (a.is_zero()) throw DomainError("the kinetic coefficient must be nonzero");
  for (const Expr* e : {&b, &V}) {
    if (!only_uses(*e, {sym::t, sym::q})) {
      throw DomainError("b and V depend on t and q only: " + to_string(*e));
    }
  }
}

Expr ClassicalLagrangian::lagrangian() const {
  const Expr qd(sym::qd);
  return Expr(a / 2) * pow(qd, 2) + b * qd - V;
}

ClassicalHamiltonian classical_legendre(const ClassicalLagrangian& l) {
  l.validate();
  const Expr qd_of_p = (Expr(sym::p) - l.b) / Expr(l.a);
  // H = p qd - L with qd eliminated through p = a qd + b
  const Expr H = Expr(sym::p) * qd_of_p - substitute(l.lagrangian(), sym::qd, qd_of_p);
  return ClassicalHamiltonian{H};
}

Expr euler_lagrange_residual(const Expr& lagrangian) {
  return partial(lagrangian, sym::q) - total_derivative(partial(lagrangian, sym::qd));
}

std::vector<PhaseState> integrate_rk4(const ClassicalHamiltonian& h, PhaseState start,
                                      double t_end, double step) {
  h.validate();
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const Expr hp = partial(h.H, sym::p);
  const Expr hq = partial(h.H, sym::q);
  const auto rhs = [&](double t, double q, double p) {
    JetPoint j(t, 1.0);
    j.set(sym::q, q);
    j.set(sym::p, p);
    return std::pair<double, double>{eval(hp, j), -eval(hq, j)};
  };
  const auto n = static_cast<long>(std::llround((t_end - start.t) / step));
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(start);
  PhaseState s = start;
  for (long i = 0; i < n; ++i) {
    const double t = start.t + static_cast<double>(i) * step;
    const auto [k1q, k1p] = rhs(t, s.q, s.p);
    const auto [k2q, k2p] = rhs(t + step / 2, s.q + step / 2 * k1q, s.p + step / 2 * k1p);
    const auto [k3q, k3p] = rhs(t + step / 2, s.q + step / 2 * k2q, s.p + step / 2 * k2p);
    const auto [k4q, k4p] = rhs(t + step, s.q + step * k3q, s.p + step * k3p);
    s.q += step / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
    s.p += step / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    s.t = start.t + static_cast<double>(i + 1) * step;
    out.push_back(s);
  }
  return out;
}

double classical_drift(const Expr& integral, const std::vector<PhaseState>& states) {
  if (states.empty()) return 0.0;
  const auto value = [&](const PhaseState& s) {
    JetPoint j(s.t, 1.0);
    j.set(sym::q, s.q);
    j.set(sym::p, s.p);
    return eval(integral, j);
  };
  const double i0 = value(states.front());
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, std::abs(value(s) - i0));
  return worst;
}

}  // namespace dham
