#include "dham/model.hpp"

#include "dham/error.hpp"
#include "dham/variational.hpp"

namespace dham {

std::string to_string(const Alphas& a) {
  return "(" + a[0].to_string() + ", " + a[1].to_string() + ", " + a[2].to_string() + ", " +
         a[3].to_string() + ")";
}

void QuadraticLagrangian::validate() const {
  if (beta.is_zero()) throw DomainError("the mixed coefficient beta must be nonzero");
  if (!only_uses(phi, {sym::q, sym::qm})) {
    throw DomainError("the potential may depend on q and qm only: " + to_string(phi));
  }
}

bool QuadraticLagrangian::degenerate() const { return (alpha * gamma - beta * beta).is_zero(); }

Expr QuadraticLagrangian::lagrangian() const {
  const Expr qd(sym::qd), qdm(sym::qdm);
  return Expr(alpha / 2) * pow(qd, 2) + Expr(beta) * qd * qdm + Expr(gamma / 2) * pow(qdm, 2) -
         phi;
}

void DelayHamiltonian::validate() const {
  if (!only_uses(H, {sym::t, sym::tm, sym::q, sym::qm, sym::p, sym::pm})) {
    throw DomainError("the Hamiltonian may depend on t, tm, q, qm, p, pm only: " + to_string(H));
  }
}

void QuadraticHamiltonian::validate() const {
  if (B.is_zero()) throw DomainError("the mixed coefficient B must be nonzero");
  if (!only_uses(phi, {sym::q, sym::qm})) {
    throw DomainError("the potential may depend on q and qm only: " + to_string(phi));
  }
}

Expr QuadraticHamiltonian::hamiltonian() const {
  const Expr p(sym::p), pm(sym::pm);
  return Expr(A / 2) * pow(p, 2) + Expr(B) * p * pm + Expr(C / 2) * pow(pm, 2) + phi;
}

void Generator::validate() const {
  for (const Expr* c : {&xi, &eta, &nu}) {
    if (!only_uses(*c, {sym::t, sym::q, sym::p})) {
      throw DomainError("generator coefficients may depend on t, q, p only: " + to_string(*c));
    }
  }
}

Generator operator+(const Generator& a, const Generator& b) {
  return Generator{a.xi + b.xi, a.eta + b.eta, a.nu + b.nu, a.name + "+" + b.name};
}

Generator operator*(const Number& c, const Generator& g) {
  return Generator{Expr(c) * g.xi, Expr(c) * g.eta, Expr(c) * g.nu, c.to_string() + "*" + g.name};
}

Expr tilde_h(const DelayHamiltonian& h) {
  const auto& a = h.alphas;
  const Expr qd(sym::qd), qdm(sym::qdm);
  return Expr(sym::pm) * (Expr(a[0]) * qd + Expr(a[1]) * qdm) +
         Expr(sym::p) * (Expr(a[2]) * qd + Expr(a[3]) * qdm) - h.H;
}

Residuals variational_residuals(const DelayHamiltonian& h) {
  const auto& a = h.alphas;
  const Expr both = h.H + shift(h.H, +1);
  const Expr a23(a[1] + a[2]);
  Residuals r;
  r.rp = Expr(a[0]) * Expr(sym::qdp) + a23 * Expr(sym::qd) + Expr(a[3]) * Expr(sym::qdm) -
         partial(both, sym::p);
  r.rq = -(Expr(a[3]) * Expr(sym::pdp) + a23 * Expr(sym::pd) + Expr(a[0]) * Expr(sym::pdm) +
           partial(both, sym::q));
  const Expr p(sym::p), pm(sym::pm), pp(sym::pp), qd(sym::qd), qdm(sym::qdm);
  const Expr flux = Expr(a[1]) * (p * qd - pm * qdm) + Expr(a[3]) * (pp * qd - p * qdm);
  r.rt = total_derivative(flux) + total_derivative(h.H) - partial(both, sym::t);
  return r;
}

Expr elsgolts_residual(const QuadraticLagrangian& l) {
  const Expr both = l.phi + shift(l.phi, +1);
  return -(Expr(l.beta) * Expr(sym::qddp) + Expr(l.alpha + l.gamma) * Expr(sym::qdd) +
           Expr(l.beta) * Expr(sym::qddm) + partial(both, sym::q));
}

Expr elsgolts_operator(const Expr& lagrangian) {
  return variational_derivative(lagrangian, Base::Q);
}

Expr local_extremal_residual(const DelayHamiltonian& h, const Generator& g) {
  const Residuals r = variational_residuals(h);
  return g.xi * r.rt + g.eta * r.rq + g.nu * r.rp;
}

Prolongation prolong(const Generator& g) {
  const Expr dxi = total_derivative(g.xi);
  Prolongation pr;
  pr.zeta_eta = total_derivative(g.eta) - Expr(sym::qd) * dxi;
  pr.zeta_nu = total_derivative(g.nu) - Expr(sym::pd) * dxi;
  pr.zeta_eta2 = total_derivative(pr.zeta_eta) - Expr(sym::qdd) * dxi;
  pr.zeta_nu2 = total_derivative(pr.zeta_nu) - Expr(sym::pdd) * dxi;
  return pr;
}

Expr apply_prolonged(const Generator& g, const Expr& f) {
  const Prolongation pr = prolong(g);
  const SymbolSet used = symbols_of(f);
  Expr out;
  for (int s = -1; s <= 1; ++s) {
    const auto at = [s](const Expr& c) { return s == 0 ? c : shift(c, s); };
    const std::array<std::pair<Symbol, const Expr*>, 7> slots{{
        {Symbol{Base::T, s, 0}, &g.xi},
        {Symbol{Base::Q, s, 0}, &g.eta},
        {Symbol{Base::P, s, 0}, &g.nu},
        {Symbol{Base::Q, s, 1}, &pr.zeta_eta},
        {Symbol{Base::P, s, 1}, &pr.zeta_nu},
        {Symbol{Base::Q, s, 2}, &pr.zeta_eta2},
        {Symbol{Base::P, s, 2}, &pr.zeta_nu2},
    }};
    for (const auto& [x, coef] : slots) {
      if (!used.test(x.index()) || coef->is_zero_const()) continue;
      out += at(*coef) * partial(f, x);
    }
  }
  return out;
}

bool xi_admissible(const Generator& g, int samples, double tol, std::uint64_t seed) {
  if (!only_uses(g.xi, {sym::t})) return false;
  const Expr dxi = total_derivative(g.xi);
  return is_zero(dxi - shift(dxi, -1), samples, tol, seed).ok;
}

}  // namespace dham
