// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dham/classical.hpp"
#include "dham/legendre.hpp"
#include "dham/noether.hpp"
#include "dham/recursion.hpp"
#include "dham/solver.hpp"
#include "support/oracle.hpp"

using namespace dham;
using oracle::gen;

namespace {

// Tolerances.
constexpr double kIdentityRel = 1e-9;
constexpr int kIdentitySamples = 100;
constexpr double kIdentitySeconds = 5.0;
constexpr double kEnergyDrift = 1e-8;
constexpr double kClassicalSeconds = 1.0;
constexpr double kDynamicsDiff = 1e-5;
constexpr double kMinOrder = 3.0;
constexpr double kIntegralDrift = 1e-5;
constexpr double kRelationResidual = 1e-12;
constexpr double kRecursionDiff = 1e-5;
constexpr double kRecursionSeconds = 2.0;
constexpr double kConstantsAgreement = 1e-12;
constexpr double kExtendedRel = 1e-8;
constexpr int kExtendedPoints = 30;

const Generator kX1 = gen("0", "sin(t)", "cos(t)", "X1");
const Generator kX2 = gen("0", "cos(t)", "-sin(t)", "X2");
const Generator kX3 = gen("1", "0", "0", "X3");
const Generator kX4 = gen("0", "q", "p", "X4");
const Generator kX5 = gen("0", "p", "-q", "X5");

const History kHist1{0.0, 1.0, parse("sin(t)"), parse("cos(t)")};
const History kHist2{0.0, 1.0, parse("cos(t) + sin(2*t)/4"), parse("-sin(t) + cos(2*t)/2")};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// max |q_coarse - q_fine| at the coarse nodes in [t_from, t_to]; fine has twice the nodes.
double self_difference(const Trajectory& coarse, const Trajectory& fine, double t_from, double t_to) {
  double m = 0.0;
  for (std::size_t g = 0; g < coarse.node_count(); ++g) {
    const double t = coarse.time(g);
    if (t < t_from - 1e-12 || t > t_to + 1e-12) continue;
    m = std::max(m, std::abs(coarse.node(g).q - fine.node(2 * g).q));
  }
  return m;
}

std::string orders_text(const std::vector<double>& orders) {
  std::string s;
  for (double o : orders) s += (s.empty() ? "" : ",") + fmt(o);
  return s;
}

bool all_at_least(const std::vector<double>& xs, double bound) {
  for (double x : xs) {
    if (!(x >= bound)) return false;
  }
  return !xs.empty();
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  const auto check = [&](const DelayHamiltonian& h, const Generator& g, const std::string& label) {
    const ZeroCheck c = verify_hamiltonian_identity(h, g, kIdentitySamples, kIdentityRel);
    worst = std::max(worst, c.max_rel);
    if (!c.ok) o.require(false, label + " " + c.summary());
  };
  for (const Generator& g : {kX1, kX2, kX4, kX5}) check(oracle::example1_h(), g, "example 1 " + g.name);
  for (const Generator& g : {kX1, kX2}) check(oracle::example2_h(), g, "example 2 " + g.name);
  for (std::uint64_t s = 0; s < 20; ++s) {
    check(oracle::random_quadratic_h(1000 + s), oracle::random_polynomial_generator(2000 + s, s % 2 == 0),
          "random pair " + std::to_string(s));
  }
  const double elapsed = seconds_since(start);
  o.require(true, "26 pairs, max rel " + fmt(worst));
  o.require(elapsed < kIdentitySeconds, "runtime " + fmt(elapsed) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const ClassicalHamiltonian h{parse("(p^2 + q^2)/2")};
  for (const Generator& g : {kX3, kX5, kX1, gen("t", "q*p", "sin(q)")}) {
    const ZeroCheck c = is_zero(classical_identity_defect(h, g), kIdentitySamples, kIdentityRel);
    if (!c.ok) o.require(false, "identity " + c.summary());
  }
  const auto states = integrate_rk4(h, PhaseState{0.0, 1.0, 0.0}, 10.0, 1e-3);
  const double d = classical_drift(-h.H, states);
  const double elapsed = seconds_since(start);
  o.require(d <= kEnergyDrift, "energy drift " + fmt(d));
  o.require(elapsed < kClassicalSeconds, "runtime " + fmt(elapsed) + " s");
  return o;
}

bool alphas_equal(const Alphas& a, std::initializer_list<int> b) {
  std::size_t i = 0;
  for (int x : b) {
    if (!(a[i++] == Number(x))) return false;
  }
  return true;
}

bool proportional(const Alphas& a, const Alphas& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (!(a[i] * b[k] == a[k] * b[i])) return false;
    }
  }
  return true;
}

Outcome criterion3() {
  Outcome o;
  const LegendreResult r1 = legendre_forward(oracle::example1_l(), Number(1));
  o.require(is_zero(r1.hamiltonian.H - parse("p*pm + q*qm")).ok &&
                alphas_equal(r1.hamiltonian.alphas, {1, 0, 0, 1}),
            "example 1 forward");
  const QuadraticLagrangian l2 = oracle::example2_l();
  const LegendreResult r2 = legendre_forward(l2, Number(1));
  o.require(is_zero(r2.hamiltonian.H - (parse("(p + pm)^2/2") + l2.phi)).ok &&
                alphas_equal(r2.hamiltonian.alphas, {1, 1, 1, 1}),
            "example 2 forward");

  const QuadraticHamiltonian h1{Number(0), Number(1), Number(0), parse("q*qm")};
  const QuadraticHamiltonian h2{Number(1), Number(1), Number(1), parse("(q + qm)^2/2")};
  const ReverseResult b1 = legendre_reverse(h1, Number(1));
  const ReverseResult b2 = legendre_reverse(h2, Number(1));
  o.require(structurally_equal(canonical(b1.lagrangian.lagrangian()),
                               canonical(oracle::example1_l().lagrangian())),
            "example 1 reverse");
  o.require(structurally_equal(canonical(b2.lagrangian.lagrangian()), canonical(l2.lagrangian())),
            "example 2 reverse");

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> c(-6, 6);
  int tried = 0, good = 0;
  while (tried < 20) {
    const QuadraticLagrangian l{Number(c(rng)), Number(c(rng)), Number(c(rng)), Expr()};
    if (l.beta.is_zero()) continue;
    ++tried;
    if (proportional(alphas_alternative(l), Alphas{l.beta, l.gamma, l.alpha, l.beta})) ++good;
  }
  o.require(good == 20, "alternative coefficients proportional " + std::to_string(good) + "/20");
  return o;
}

Outcome criterion4() {
  Outcome o;
  struct Case {
    const char* name;
    DelayHamiltonian h;
    QuadraticLagrangian l;
    History hist;
  };
  const Case cases[] = {{"example 1", oracle::example1_h(), oracle::example1_l(), kHist1},
                        {"example 2", oracle::example2_h(), oracle::example2_l(), kHist2}};
  const double horizon = 10.0;
  for (const Case& c : cases) {
    std::vector<Trajectory> hs, ls;
    for (int n : {32, 64, 128, 256, 512}) {
      hs.push_back(step_hamiltonian(c.h, c.hist, horizon, n));
      ls.push_back(step_elsgolts(c.l, c.hist, horizon, n));
    }
    const double diff = oracle::max_q_difference(hs[2], ls[2], 0.0, horizon);
    o.require(diff <= kDynamicsDiff, std::string(c.name) + " |dq| at N=128 " + fmt(diff));
    std::vector<double> eh, el;
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
      eh.push_back(self_difference(hs[i], hs[i + 1], 0.0, horizon));
      el.push_back(self_difference(ls[i], ls[i + 1], 0.0, horizon));
    }
    const auto oh = oracle::observed_orders(eh);
    const auto ol = oracle::observed_orders(el);
    o.require(all_at_least(oh, kMinOrder) && all_at_least(ol, kMinOrder),
              std::string(c.name) + " orders H " + orders_text(oh) + " L " + orders_text(ol));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Case {
    const char* name;
    DelayHamiltonian h;
    History hist;
    Generator g;
    Expr printed;
  };
  const Case cases[] = {
      {"example 1 I1", oracle::example1_h(), kHist1, kX1, oracle::ex1_i1()},
      {"example 1 I2", oracle::example1_h(), kHist1, kX2, oracle::ex1_i2()},
      {"example 2 I1", oracle::example2_h(), kHist2, kX1, oracle::ex2_i1()},
      {"example 2 I2", oracle::example2_h(), kHist2, kX2, oracle::ex2_i2()},
  };
  for (const Case& c : cases) {
    const InvarianceResidual inv = classify_invariance(c.h, c.g);
    const IntegralSearch found = find_differential_integral(c.h, c.g, inv);
    if (!found.integral) {
      o.require(false, std::string(c.name) + " not derived: " + found.note);
      continue;
    }
    o.require(is_zero(*found.integral - c.printed).ok, std::string(c.name) + " matches");
    std::vector<double> drifts;
    for (int n : {32, 64, 128}) {
      const Trajectory traj = step_hamiltonian(c.h, c.hist, 10.0, n);
      drifts.push_back(drift(*found.integral, traj, IntegralKind::Differential).max_deviation);
    }
    const auto orders = oracle::observed_orders(drifts);
    o.require(drifts.back() <= kIntegralDrift && all_at_least(orders, kMinOrder),
              std::string(c.name) + " drift " + fmt(drifts.back()) + " orders " + orders_text(orders));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto [A, B] = recover_constants(kHist1, 0.0);
  const auto [eA, eB] = oracle::ex1_constants(
      1.0, [](double t) { return std::sin(t); }, [](double t) { return std::cos(t); });
  o.require(std::abs(A - eA) <= kConstantsAgreement && std::abs(B - eB) <= kConstantsAgreement,
            "A " + fmt(A) + " B " + fmt(B));
  const SumFormRelation rel{0.0, eA, eB};
  const RecursionResult r = recurse(rel, kHist1, 6.0, 128);
  const double res = relation_residual(r.trajectory, rel);
  o.require(res <= kRelationResidual, "relation residual " + fmt(res));
  const Trajectory num = step_hamiltonian(oracle::example1_h(), kHist1, 6.0, 128);
  const ComparisonReport cmp = compare(r.trajectory, num, 0.0, 6.0);
  o.require(cmp.q.max <= kRecursionDiff && cmp.p.max <= kRecursionDiff,
            "vs numerical q " + fmt(cmp.q.max) + " p " + fmt(cmp.p.max));
  const double elapsed = seconds_since(start);
  o.require(elapsed < kRecursionSeconds, "runtime " + fmt(elapsed) + " s");
  return o;
}

Expr delta_p(const Expr& e) {
  return partial(e, sym::p) + shift(partial(e, sym::pm), +1) -
         total_derivative(partial(e, sym::pd) + shift(partial(e, sym::pdm), +1));
}

Outcome criterion7() {
  Outcome o;
  const DelayHamiltonian h = oracle::example1_h();
  const GeneratorReport x4 = analyze_generator(h, kX4);
  o.require(x4.invariance.classification == Classification::None, "X4 classified " +
                std::string(to_string(x4.invariance.classification)));
  o.require(!x4.invariance.v.has_value(), "X4 no V");
  o.require(!is_zero(x4.invariance.omega).ok, "Omega4 nonzero");
  o.require(variational_derivative_identities(h, kX4).ok(), "X4 variational identities");
  const Expr ht = tilde_h(h);
  const Expr dop = delta_p(x4.invariance.omega);
  o.require(is_zero(dop - delta_p(ht)).ok, "dOmega4/dp = dH~/dp");
  o.require(true, "dOmega4/dp = 2 dH~/dp holds: " +
                      std::string(is_zero(dop - Expr(2) * delta_p(ht)).ok ? "yes" : "no"));

  DelayHamiltonian d = h;
  d.alphas = {Number(0), Number(0), Number(1), Number(0)};
  const GeneratorReport x2 = analyze_generator(d, kX4);
  o.require(is_zero(x2.invariance.omega - Expr(2) * tilde_h(d)).ok, "non-Legendre Omega2 = 2H~");
  o.require(x2.invariance.classification != Classification::Divergence &&
                x2.invariance.classification != Classification::Variational,
            "non-Legendre X2 not a divergence symmetry");
  o.require(!x2.differential.integral && !x2.difference.integral, "non-Legendre X2 no integral");
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst = 0.0;
  const auto check = [&](const DelayHamiltonian& h, const Generator& g, const std::string& label) {
    const IdentityReport r = variational_derivative_identities(h, g, kIdentitySamples, kIdentityRel);
    worst = std::max({worst, r.var_p.max_rel, r.var_q.max_rel, r.var_t.max_rel, r.var_quasi.max_rel});
    if (!r.ok()) o.require(false, label);
  };
  for (const Generator& g : {kX1, kX2, kX3, kX4, kX5}) {
    check(oracle::example1_h(), g, "example 1 " + g.name);
    check(oracle::example2_h(), g, "example 2 " + g.name);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    check(oracle::random_quadratic_h(3000 + s), oracle::random_polynomial_generator(4000 + s, true),
          "random pair " + std::to_string(s));
  }
  o.require(true, "20 pairs, max rel " + fmt(worst));
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> c(1, 4);
  const double mu = 2.0;
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    ExtendedLagrangian l;
    l.alpha = Expr(c(rng));
    l.beta = Expr(c(rng) + 4);
    l.gamma = Expr(c(rng));
    l.lambda = parse("q");
    l.mu = Expr(2);
    l.phi = parse("q*qm + qm^2/2");
    const ExtendedLegendre e = legendre_extended(l);
    const ExtendedResiduals r = extended_residuals(e);
    const Expr els = elsgolts_operator(l.lagrangian());
    for (int i = 0; i < kExtendedPoints; ++i) {
      // p from the momentum relation qd = lambda + mu p at each of the three points.
      JetPoint j = random_jet(500 + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i));
      for (int s = -1; s <= 1; ++s) {
        const double q = j.get(Symbol{Base::Q, s, 0});
        const double qd = j.get(Symbol{Base::Q, s, 1});
        const double qdd = j.get(Symbol{Base::Q, s, 2});
        j.set(Symbol{Base::P, s, 0}, (qd - q) / mu);
        j.set(Symbol{Base::P, s, 1}, (qdd - qd) / mu);
      }
      const double target = eval(els, j);
      const double scale = 1.0 + std::abs(target);
      worst = std::max({worst, std::abs(eval(r.rq, j) - target) / scale, std::abs(eval(r.rp, j)) / scale});
    }
  }
  o.require(worst <= kExtendedRel, "3 coefficient sets x 30 points, max rel " + fmt(worst));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"off-shell delay identity", criterion1},
      {"classical baseline", criterion2},
      {"Legendre transforms", criterion3},
      {"Hamiltonian and Lagrangian dynamics agree", criterion4},
      {"first integrals and drift", criterion5},
      {"recursion of the first example", criterion6},
      {"negative controls", criterion7},
      {"invariance-of-equations identities", criterion8},
      {"extended transform", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
