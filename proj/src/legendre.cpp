#include "dham/legendre.hpp"

#include <cmath>

#include "dham/error.hpp"
#include "dham/variational.hpp"

namespace dham {

LegendreResult legendre_forward(const QuadraticLagrangian& l, const Number& alpha1) {
  l.validate();
  if (alpha1.is_zero()) throw DomainError("the coefficient scale alpha1 must be nonzero");
  const Number& a = l.alpha;
  const Number& b = l.beta;
  const Number& g = l.gamma;

  LegendreResult r;
  r.hamiltonian.alphas = {alpha1, g / b * alpha1, a / b * alpha1, alpha1};
  const Expr p(sym::p), pm(sym::pm), qd(sym::qd), qdm(sym::qdm);

  if (!l.degenerate()) {
    const Number s = alpha1 * alpha1 / (b * b);
    r.hamiltonian.H = Expr(s * a / 2) * pow(p, 2) + Expr(s * b) * p * pm +
                      Expr(s * g / 2) * pow(pm, 2) + l.phi;
    const Number k = b / alpha1;
    r.momentum_map = MomentumMap{Expr(k) * qd, Expr(k) * qdm};
    r.inverse_map = VelocityMap{Expr(Number(1) / k) * p, Expr(Number(1) / k) * pm};
    return r;
  }

  if (a.is_negative() || a.is_zero() || g.is_negative() || g.is_zero() || b.is_negative()) {
    throw DomainError(
        "degenerate Lagrangian outside the supported sign pattern alpha > 0, gamma > 0, "
        "beta = sqrt(alpha*gamma)");
  }
  const Number ra = sqrt(a);
  const Number rg = sqrt(g);
  const Number& a4 = r.hamiltonian.alphas[3];
  const Expr combo = Expr(a4 / rg) * p + Expr(alpha1 / ra) * pm;
  r.hamiltonian.H = Expr(Number::rational(1, 2)) * pow(combo, 2) + l.phi;
  r.merged_relation = Expr(alpha1 / ra) * pm + Expr(a4 / rg) * p - (Expr(ra) * qd + Expr(rg) * qdm);
  r.degenerate = true;
  return r;
}

LegendreResult legendre_forward(const QuadraticLagrangian& l) { return legendre_forward(l, l.beta); }

ReverseResult legendre_reverse(const QuadraticHamiltonian& h, const Number& alpha1) {
  h.validate();
  if (alpha1.is_zero()) throw DomainError("the coefficient scale alpha1 must be nonzero");
  const Number& B = h.B;
  const Number s = alpha1 * alpha1 / (B * B);
  ReverseResult r;
  r.alphas = {alpha1, h.C / B * alpha1, h.A / B * alpha1, alpha1};
  r.lagrangian.alpha = s * h.A;
  r.lagrangian.beta = s * B;
  r.lagrangian.gamma = s * h.C;
  r.lagrangian.phi = h.phi;
  const Number k = B / alpha1;
  r.velocity_map = VelocityMap{Expr(k) * Expr(sym::p), Expr(k) * Expr(sym::pm)};
  return r;
}

ReverseResult legendre_reverse(const QuadraticHamiltonian& h) { return legendre_reverse(h, h.B); }

namespace {

// Constant value of `e` if it is one, exact when the canonical form is a literal.
std::optional<Number> constant_value(const Expr& e) {
  const Expr c = canonical(e);
  if (c.is_const()) return c.number();
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    const Expr d = partial(c, symbol_at(i));
    if (!d.is_zero_const() && !is_zero(d, 20).ok) return std::nullopt;
  }
  return Number::from_double(eval(c, random_jet(kDefaultSeed, 0)));
}

}  // namespace

std::optional<QuadraticHamiltonian> quadratic_hamiltonian_from(const Expr& H) {
  const Expr hp = partial(H, sym::p);
  const Expr hpm = partial(H, sym::pm);
  const auto A = constant_value(partial(hp, sym::p));
  const auto B = constant_value(partial(hp, sym::pm));
  const auto C = constant_value(partial(hpm, sym::pm));
  if (!A || !B || !C || B->is_zero()) return std::nullopt;
  QuadraticHamiltonian q;
  q.A = *A;
  q.B = *B;
  q.C = *C;
  q.phi = canonical(substitute(H, {{sym::p.index(), Expr()}, {sym::pm.index(), Expr()}}));
  if (!only_uses(q.phi, {sym::q, sym::qm})) return std::nullopt;
  if (!is_zero(H - q.hamiltonian()).ok) return std::nullopt;
  return q;
}

Alphas alphas_alternative(const QuadraticLagrangian& l) {
  l.validate();
  // alpha_i times the momentum equals c_i times the velocity at the same
  // point; the pm relations are moved to t by the compatibility shift.
  const Expr qd(sym::qd), qdm(sym::qdm);
  const std::array<Expr, 4> rhs{Expr(l.beta) * qdm, Expr(l.gamma) * qdm, Expr(l.alpha) * qd,
                                Expr(l.beta) * qd};
  const std::array<bool, 4> on_pm{true, true, false, false};
  std::array<Number, 4> c;
  for (std::size_t i = 0; i < 4; ++i) {
    const Expr at_t = on_pm[i] ? shift(rhs[i], +1) : rhs[i];
    const Expr k = canonical(partial(at_t, sym::qd));
    c[i] = k.is_const() ? k.number() : Number(0);
  }
  // With p = qd the relations read alpha_i = c_i; rescale so alpha1 = beta.
  const Number scale = l.beta / c[0];
  return {c[0] * scale, c[1] * scale, c[2] * scale, c[3] * scale};
}

void ExtendedLagrangian::validate() const {
  for (const Expr* e : {&alpha, &beta, &gamma, &phi}) {
    if (!only_uses(*e, {sym::q, sym::qm})) {
      throw DomainError("coefficients and potential may depend on q and qm only: " +
                        to_string(*e));
    }
  }
  for (const Expr* e : {&lambda, &mu}) {
    if (!only_uses(*e, {sym::q})) {
      throw DomainError("lambda and mu may depend on q only: " + to_string(*e));
    }
  }
}

Expr ExtendedLagrangian::lagrangian() const {
  const Expr qd(sym::qd), qdm(sym::qdm);
  const Expr lm = shift(lambda, -1);
  return alpha / Expr(2) * pow(qd, 2) + beta * qd * qdm + gamma / Expr(2) * pow(qdm, 2) -
         (alpha * lambda + beta * lm) * qd - (beta * lambda + gamma * lm) * qdm - phi;
}

ExtendedLegendre legendre_extended(const ExtendedLagrangian& l, std::uint64_t seed) {
  l.validate();
  for (int i = 0; i < kDefaultSamples; ++i) {
    const JetPoint j = random_jet(seed, static_cast<std::uint64_t>(i));
    if (std::abs(eval(l.mu, j)) < 1e-8) {
      throw DomainError("mu vanishes at a sampled point: " + j.describe());
    }
    if (std::abs(eval(l.beta, j)) < 1e-12) {
      throw DomainError("beta vanishes at a sampled point: " + j.describe());
    }
  }
  const Expr p(sym::p), pm(sym::pm);
  const Expr lm = shift(l.lambda, -1);
  const Expr mum = shift(l.mu, -1);
  const Expr r = l.mu * p + l.lambda;
  const Expr rm = mum * pm + lm;
  ExtendedLegendre out;
  out.H = l.alpha / Expr(2) * pow(r, 2) + l.beta * r * rm + l.gamma / Expr(2) * pow(rm, 2) + l.phi;
  out.alphas = {l.beta * mum, l.gamma * mum, l.alpha * l.mu, l.beta * l.mu};
  out.velocity_map = VelocityMap{r, rm};
  return out;
}

ExtendedResiduals extended_residuals(const ExtendedLegendre& e) {
  const auto& a = e.alphas;
  const Expr qd(sym::qd), qdm(sym::qdm);
  const Expr ht = Expr(sym::pm) * (a[0] * qd + a[1] * qdm) + Expr(sym::p) * (a[2] * qd + a[3] * qdm) - e.H;
  return {variational_derivative(ht, Base::P), variational_derivative(ht, Base::Q)};
}

Expr extended_elsgolts_residual(const ExtendedLagrangian& l) {
  const Expr& al = l.alpha;
  const Expr& be = l.beta;
  const Expr& ga = l.gamma;
  const Expr alp = shift(al, +1), bep = shift(be, +1), gap = shift(ga, +1);
  const Expr lam = l.lambda, lamp = shift(lam, +1), lamm = shift(lam, -1);
  const Expr dlam = partial(lam, sym::q);
  const Expr dlamp = shift(dlam, +1), dlamm = shift(dlam, -1);
  const Expr qd(sym::qd), qdm(sym::qdm), qdp(sym::qdp);
  const auto d = [](const Expr& f, Symbol s) { return partial(f, s); };
  const Expr half(Number::rational(1, 2));

  Expr r = -(bep * Expr(sym::qddp)) - (al + gap) * Expr(sym::qdd) - be * Expr(sym::qddm);
  r += (half * d(alp, sym::q) - d(bep, sym::qp)) * pow(qdp, 2);
  r -= d(gap, sym::qp) * qdp * qd;
  r -= half * (d(al, sym::q) + d(gap, sym::q)) * pow(qd, 2);
  r -= d(al, sym::qm) * qd * qdm;
  r += (half * d(ga, sym::q) - d(be, sym::qm)) * pow(qdm, 2);
  r += (bep * (dlamp - dlam) + (d(bep, sym::qp) - d(alp, sym::q)) * lamp +
        (d(gap, sym::qp) - d(bep, sym::q)) * lam) *
       qdp;
  r += (be * (dlamm - dlam) + (d(al, sym::qm) - d(be, sym::q)) * lam +
        (d(be, sym::qm) - d(ga, sym::q)) * lamm) *
       qdm;
  r -= d(l.phi, sym::q) + d(shift(l.phi, +1), sym::q);
  return r;
}

}  // namespace dham
