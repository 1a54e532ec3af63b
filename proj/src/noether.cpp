#include "dham/noether.hpp"

#include <cmath>
#include <memory>

#include "dham/error.hpp"
#include "dham/fit.hpp"
#include "dham/variational.hpp"

namespace dham {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Variational:
      return "variational";
    case Classification::Divergence:
      return "divergence";
    case Classification::None:
      return "none";
  }
  return "none";
}

namespace {

struct Coeffs {
  Expr a1, a2, a3, a4;
  explicit Coeffs(const Alphas& a) : a1(a[0]), a2(a[1]), a3(a[2]), a4(a[3]) {}
};

bool identically_zero(const Expr& e) {
  return canonical(e).is_zero_const() || is_zero(e, 30, 1e-12).ok;
}

}  // namespace

Expr omega(const DelayHamiltonian& h, const Generator& g) {
  const Coeffs a(h.alphas);
  const Expr qd(sym::qd), qdm(sym::qdm), p(sym::p), pm(sym::pm);
  const Expr xim = shift(g.xi, -1), etam = shift(g.eta, -1), num = shift(g.nu, -1);
  const Expr deta = total_derivative(g.eta), detam = total_derivative(etam);
  const Expr& H = h.H;
  return num * (a.a1 * qd + a.a2 * qdm) + pm * (a.a1 * deta + a.a2 * detam) +
         g.nu * (a.a3 * qd + a.a4 * qdm) + p * (a.a3 * deta + a.a4 * detam) +
         (a.a2 * pm + a.a4 * p) * qdm * total_derivative(g.xi - xim) - g.xi * partial(H, sym::t) -
         g.eta * partial(H, sym::q) - g.nu * partial(H, sym::p) - xim * partial(H, sym::tm) -
         etam * partial(H, sym::qm) - num * partial(H, sym::pm) - H * total_derivative(g.xi);
}

Expr omega_via_tilde(const DelayHamiltonian& h, const Generator& g) {
  const Expr ht = tilde_h(h);
  return apply_prolonged(g, ht) + ht * total_derivative(g.xi);
}

NoetherQuantities c_and_p(const DelayHamiltonian& h, const Generator& g) {
  const Coeffs a(h.alphas);
  const Expr qd(sym::qd), qdm(sym::qdm), p(sym::p), pm(sym::pm), pp(sym::pp);
  const Expr xim = shift(g.xi, -1), etam = shift(g.eta, -1), num = shift(g.nu, -1);
  const Expr& H = h.H;
  NoetherQuantities nq;
  nq.c = g.eta * (a.a4 * pp + (a.a2 + a.a3) * p + a.a1 * pm) -
         g.xi * (a.a2 * (p * qd - pm * qdm) + a.a4 * (pp * qd - p * qdm) + H);
  const Expr lead = a.a2 * pm + a.a4 * p;
  nq.p_quantity = lead * total_derivative(etam) + num * (a.a1 * qd + a.a2 * qdm) -
                  lead * qdm * total_derivative(xim) - xim * partial(H, sym::tm) -
                  etam * partial(H, sym::qm) - num * partial(H, sym::pm);
  return nq;
}

Expr identity_defect(const DelayHamiltonian& h, const Generator& g, const Expr& c,
                     const Expr& p_quantity) {
  return omega(h, g) - (local_extremal_residual(h, g) + total_derivative(c) + p_quantity -
                        shift(p_quantity, +1));
}

ZeroCheck verify_hamiltonian_identity(const DelayHamiltonian& h, const Generator& g, int samples,
                                      double tol, std::uint64_t seed) {
  const NoetherQuantities nq = c_and_p(h, g);
  return is_zero(identity_defect(h, g, nq.c, nq.p_quantity), samples, tol, seed);
}

InvarianceResidual classify_invariance(const DelayHamiltonian& h, const Generator& g,
                                       const std::optional<Expr>& v, const std::optional<Expr>& w,
                                       std::uint64_t seed) {
  h.validate();
  g.validate();
  InvarianceResidual out;
  out.omega = omega(h, g);
  out.check = is_zero(out.omega, kDefaultSamples, kDefaultTol, seed);
  if (out.check.ok) {
    out.classification = Classification::Variational;
    return out;
  }
  if (v || w) {
    const Expr vv = v.value_or(Expr());
    const Expr ww = w.value_or(Expr());
    ZeroCheck c = is_zero(out.omega - total_derivative(vv) - (ww - shift(ww, +1)), kDefaultSamples,
                          kDefaultTol, seed);
    if (c.ok) {
      out.classification = Classification::Divergence;
      out.v = vv;
      out.w = ww;
      out.check = std::move(c);
    }
    return out;
  }
  const FitResult fit = fit_template(
      divergence_dictionary(), [](const Expr& e) { return total_derivative(e); }, out.omega,
      [seed](std::uint64_t i) { return random_jet(seed + 1, i); },
      [seed](std::uint64_t i) { return random_jet(seed + 2, i); });
  if (fit.found) {
    out.classification = Classification::Divergence;
    out.v = fit.expr;
    out.w = Expr();
    out.v_fitted = true;
    out.check = fit.check;
  }
  return out;
}

namespace {

struct OnShellPlan {
  Expr rp, rq, drp, drq;
  Symbol qd_slot, pd_slot, qdd_slot, pdd_slot;
};

int leading_shift(double plus, double zero, double minus) {
  if (plus != 0.0) return +1;
  if (zero != 0.0) return 0;
  if (minus != 0.0) return -1;
  throw DomainError("the canonical equations have no velocity term to solve for");
}

void solve_linear_slot(JetPoint& j, const Expr& residual, Symbol slot) {
  j.set(slot, 0.0);
  const double r0 = eval(residual, j);
  j.set(slot, 1.0);
  const double c = eval(residual, j) - r0;
  if (std::abs(c) < 1e-12) {
    throw DomainError("cannot solve for " + slot.name() + " at " + j.describe());
  }
  j.set(slot, -r0 / c);
}

}  // namespace

JetSampler on_shell_sampler(const DelayHamiltonian& h, std::uint64_t seed) {
  const Residuals r = variational_residuals(h);
  auto plan = std::make_shared<OnShellPlan>();
  plan->rp = r.rp;
  plan->rq = r.rq;
  plan->drp = total_derivative(r.rp);
  plan->drq = total_derivative(r.rq);
  const double a1 = h.alphas[0].value(), a4 = h.alphas[3].value();
  const double a23 = h.alphas[1].value() + h.alphas[2].value();
  const int sq = leading_shift(a1, a23, a4);
  const int sp = leading_shift(a4, a23, a1);
  plan->qd_slot = Symbol{Base::Q, sq, 1};
  plan->qdd_slot = Symbol{Base::Q, sq, 2};
  plan->pd_slot = Symbol{Base::P, sp, 1};
  plan->pdd_slot = Symbol{Base::P, sp, 2};
  return [plan, seed](std::uint64_t index) {
    JetPoint j = random_jet(seed, index);
    solve_linear_slot(j, plan->rp, plan->qd_slot);
    solve_linear_slot(j, plan->rq, plan->pd_slot);
    solve_linear_slot(j, plan->drp, plan->qdd_slot);
    solve_linear_slot(j, plan->drq, plan->pdd_slot);
    return j;
  };
}

Expr differential_integral(const DelayHamiltonian& h, const NoetherQuantities& nq, const Expr& v,
                           std::uint64_t seed) {
  const Expr i = nq.c - v;
  const ZeroCheck check =
      is_zero_on(total_derivative(i), on_shell_sampler(h, seed), kDefaultSamples);
  if (!check.ok) {
    throw VerificationError("D(C - V) does not vanish on solutions: " + check.summary());
  }
  return i;
}

Expr difference_integral(const DelayHamiltonian& h, const NoetherQuantities& nq, const Expr& w,
                         std::uint64_t seed) {
  const Expr j = nq.p_quantity - w;
  const ZeroCheck check =
      is_zero_on(shift(j, +1) - j, on_shell_sampler(h, seed), kDefaultSamples);
  if (!check.ok) {
    throw VerificationError("(S+ - 1)(P - W) does not vanish on solutions: " + check.summary());
  }
  return j;
}

namespace {

// Shared preconditions of both integral searches. Returns a note when the
// search does not apply.
std::optional<std::string> search_blocked(const Generator& g, const InvarianceResidual& inv) {
  if (inv.classification == Classification::None) {
    return "the Hamiltonian is not (divergence) invariant under this generator";
  }
  if (!identically_zero(g.xi)) {
    return "xi is nonzero: the canonical equations do not carry this integral";
  }
  return std::nullopt;
}

FitResult fit_identity(const std::vector<Expr>& basis, const std::function<Expr(const Expr&)>& op,
                       const Expr& target, std::uint64_t seed) {
  return fit_template(
      basis, op, target, [seed](std::uint64_t i) { return random_jet(seed + 3, i); },
      [seed](std::uint64_t i) { return random_jet(seed + 4, i); });
}

}  // namespace

IntegralSearch find_differential_integral(const DelayHamiltonian& h, const Generator& g,
                                          const InvarianceResidual& inv, std::uint64_t seed) {
  IntegralSearch out;
  if (auto blocked = search_blocked(g, inv)) {
    out.note = *blocked;
    return out;
  }
  const NoetherQuantities nq = c_and_p(h, g);
  const Expr v = inv.v.value_or(Expr());
  const Expr w = inv.w.value_or(Expr());
  const Expr pw = nq.p_quantity - w;
  const FitResult fit = fit_identity(
      divergence_dictionary(), [](const Expr& e) { return total_derivative(e); },
      shift(pw, +1) - pw, seed);
  if (!fit.found) {
    out.note = "no V with (S+ - 1)(P - W) = D(V) in the template family";
    out.check = fit.check;
    return out;
  }
  out.part = fit.expr;
  const Expr i = nq.c - v - fit.expr;
  if (identically_zero(i)) {
    out.note = "the differential integral is trivial";
    return out;
  }
  out.check = is_zero_on(total_derivative(i), on_shell_sampler(h, seed + 7), kDefaultSamples);
  if (!out.check.ok) {
    out.note = "candidate integral fails the on-shell check";
    return out;
  }
  out.integral = i;
  return out;
}

IntegralSearch find_difference_integral(const DelayHamiltonian& h, const Generator& g,
                                        const InvarianceResidual& inv, std::uint64_t seed) {
  IntegralSearch out;
  if (auto blocked = search_blocked(g, inv)) {
    out.note = *blocked;
    return out;
  }
  const NoetherQuantities nq = c_and_p(h, g);
  const Expr v = inv.v.value_or(Expr());
  const Expr w = inv.w.value_or(Expr());
  const FitResult fit = fit_identity(
      difference_dictionary(), [](const Expr& e) { return shift(e, +1) - e; },
      total_derivative(nq.c - v), seed);
  if (!fit.found) {
    out.note = "no W with D(C - V) = (S+ - 1)W in the template family";
    out.check = fit.check;
    return out;
  }
  out.part = fit.expr;
  const Expr j = nq.p_quantity - w - fit.expr;
  if (identically_zero(j)) {
    out.note = "the difference integral is trivial";
    return out;
  }
  out.check = is_zero_on(shift(j, +1) - j, on_shell_sampler(h, seed + 7), kDefaultSamples);
  if (!out.check.ok) {
    out.note = "candidate integral fails the on-shell check";
    return out;
  }
  out.integral = j;
  return out;
}

namespace {

bool covers(const JetPoint& j, const SymbolSet& needed) {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (needed[i] && !j.has(symbol_at(i))) return false;
  }
  return true;
}

std::size_t first_base_node(const Trajectory& traj) {
  return static_cast<std::size_t>(traj.nodes_per_delay()) + 1;
}

}  // namespace

DriftReport max_along(const Expr& e, const Trajectory& traj) {
  const SymbolSet need = symbols_of(e);
  DriftReport out;
  for (std::size_t g = first_base_node(traj); g < traj.node_count(); ++g) {
    const JetPoint j = traj.jet(g);
    if (!covers(j, need)) continue;
    const double v = std::abs(eval(e, j));
    ++out.nodes;
    if (v > out.max_deviation || std::isnan(v)) {
      out.max_deviation = v;
      out.time_of_max = traj.time(g);
    }
  }
  if (out.nodes == 0) throw DomainError("the trajectory is too short to evaluate " + to_string(e));
  return out;
}

DriftReport drift(const Expr& integral, const Trajectory& traj, IntegralKind kind) {
  if (kind == IntegralKind::Difference) return max_along(shift(integral, +1) - integral, traj);
  const SymbolSet need = symbols_of(integral);
  DriftReport out;
  bool have_reference = false;
  for (std::size_t g = first_base_node(traj); g < traj.node_count(); ++g) {
    const JetPoint j = traj.jet(g);
    if (!covers(j, need)) continue;
    const double v = eval(integral, j);
    if (!have_reference) {
      out.reference = v;
      have_reference = true;
    }
    ++out.nodes;
    const double d = std::abs(v - out.reference);
    if (d > out.max_deviation || std::isnan(d)) {
      out.max_deviation = d;
      out.time_of_max = traj.time(g);
    }
  }
  if (out.nodes == 0) {
    throw DomainError("the trajectory is too short to evaluate " + to_string(integral));
  }
  return out;
}

ConstraintReport monitor_constrained_integral(const DelayHamiltonian& h, const Generator& g,
                                              const Trajectory& traj, double tol) {
  const NoetherQuantities nq = c_and_p(h, g);
  ConstraintReport out;
  out.integral = drift(nq.c, traj, IntegralKind::Differential);
  out.constraint = drift(nq.p_quantity, traj, IntegralKind::Difference);
  out.violated = !(out.constraint.max_deviation <= tol);
  return out;
}

IdentityReport variational_derivative_identities(const DelayHamiltonian& h, const Generator& g,
                                                 int samples, double tol, std::uint64_t seed) {
  const Residuals r = variational_residuals(h);
  const Expr om = omega(h, g);
  const Expr dxi = total_derivative(g.xi);
  const auto X = [&](const Expr& f) { return apply_prolonged(g, f); };
  const auto d = [](const Expr& f, Symbol s) { return partial(f, s); };
  const Expr om_p = variational_derivative(om, Base::P);
  const Expr om_q = variational_derivative(om, Base::Q);
  const Expr om_t = variational_derivative_t(om);
  const Expr f = g.xi * r.rt + g.eta * r.rq + g.nu * r.rp;

  IdentityReport out;
  out.var_p = is_zero(om_p - (X(r.rp) + d(g.eta, sym::p) * r.rq + (d(g.nu, sym::p) + dxi) * r.rp),
                      samples, tol, seed);
  out.var_q = is_zero(om_q - (X(r.rq) + (d(g.eta, sym::q) + dxi) * r.rq + d(g.nu, sym::q) * r.rp),
                      samples, tol, seed);
  out.var_t = is_zero(om_t - (X(r.rt) + Expr(2) * dxi * r.rt + d(g.eta, sym::t) * r.rq +
                              d(g.nu, sym::t) * r.rp),
                      samples, tol, seed);
  out.var_quasi = is_zero(g.xi * om_t + g.eta * om_q + g.nu * om_p - (X(f) + dxi * f), samples,
                          tol, seed);
  return out;
}

GeneratorReport analyze_generator(const DelayHamiltonian& h, const Generator& g,
                                  const std::optional<Expr>& v, const std::optional<Expr>& w,
                                  std::uint64_t seed) {
  GeneratorReport out;
  out.name = g.name;
  out.invariance = classify_invariance(h, g, v, w, seed);
  out.quantities = c_and_p(h, g);
  out.identity = verify_hamiltonian_identity(h, g, kDefaultSamples, kDefaultTol, seed);
  if (!xi_admissible(g)) {
    out.notes.emplace_back("xi is not an admissible function of t alone");
  } else if (!identically_zero(total_derivative(total_derivative(g.xi)))) {
    out.notes.emplace_back("xi is periodic rather than affine; C and P are untested here");
  }
  out.differential = find_differential_integral(h, g, out.invariance, seed);
  out.difference = find_difference_integral(h, g, out.invariance, seed);
  out.quantities.differential_integral = out.differential.integral;
  out.quantities.difference_integral = out.difference.integral;
  if (out.invariance.classification != Classification::None && !identically_zero(g.xi)) {
    out.notes.emplace_back(
        "purely temporal part: invariant, but the integral needs another determined system");
  }
  return out;
}

}  // namespace dham
