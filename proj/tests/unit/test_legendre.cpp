#include <random>

#include "doctest.h"
#include "dham/error.hpp"
#include "dham/legendre.hpp"
#include "support/oracle.hpp"

using namespace dham;

namespace {

bool same_alphas(const Alphas& a, const Alphas& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(a[i] == b[i])) return false;
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

Alphas alphas(int a1, int a2, int a3, int a4) {
  return {Number(a1), Number(a2), Number(a3), Number(a4)};
}

// Jet with q-derivatives from random_jet and p_s = (qd_s - lambda(q_s)) / mu,
// pd_s = (qdd_s - lambda'(q_s) qd_s) / mu, for lambda = q and constant mu.
JetPoint extended_jet(std::uint64_t i, double mu) {
  JetPoint j = random_jet(61, i);
  for (int s = -1; s <= 1; ++s) {
    const double q = j.get(Symbol{Base::Q, s, 0});
    const double qd = j.get(Symbol{Base::Q, s, 1});
    const double qdd = j.get(Symbol{Base::Q, s, 2});
    j.set(Symbol{Base::P, s, 0}, (qd - q) / mu);
    j.set(Symbol{Base::P, s, 1}, (qdd - qd) / mu);
  }
  return j;
}

}  // namespace

TEST_CASE("forward transform of the first example") {
  const LegendreResult r = legendre_forward(oracle::example1_l(), Number(1));
  CHECK(same_alphas(r.hamiltonian.alphas, alphas(1, 0, 0, 1)));
  CHECK(is_zero(r.hamiltonian.H - parse("p*pm + q*qm")).ok);
  CHECK(to_string(canonical(r.hamiltonian.H)) == to_string(canonical(parse("p*pm + q*qm"))));
  CHECK_FALSE(r.degenerate);
  REQUIRE(r.momentum_map.has_value());
  CHECK(is_zero(r.momentum_map->p - parse("qd")).ok);
  CHECK(is_zero(shift(r.momentum_map->pm, +1) - r.momentum_map->p).ok);
}

TEST_CASE("forward transform of the second (degenerate) example") {
  const QuadraticLagrangian l = oracle::example2_l();
  const LegendreResult r = legendre_forward(l, Number(1));
  CHECK(r.degenerate);
  CHECK(same_alphas(r.hamiltonian.alphas, alphas(1, 1, 1, 1)));
  CHECK(is_zero(r.hamiltonian.H - (parse("(p + pm)^2/2") + l.phi)).ok);
  CHECK_FALSE(r.momentum_map.has_value());
  REQUIRE(r.merged_relation.has_value());
  CHECK(is_zero(*r.merged_relation - parse("p + pm - (qd + qdm)")).ok);

  const Residuals res = variational_residuals(r.hamiltonian);
  CHECK(is_zero(res.rp - parse("qdp + 2*qd + qdm - (pp + 2*p + pm)")).ok);
  const Expr dphi = partial(l.phi + shift(l.phi, +1), sym::q);
  CHECK(is_zero(res.rq + parse("pdp + 2*pd + pdm") + dphi).ok);
}

TEST_CASE("forward transform of a hand-computed case") {
  const QuadraticLagrangian l{Number(2), Number(1), Number(0), Expr()};
  const LegendreResult r = legendre_forward(l, Number(1));
  CHECK(same_alphas(r.hamiltonian.alphas, alphas(1, 0, 2, 1)));
  CHECK(is_zero(r.hamiltonian.H - parse("p^2 + p*pm")).ok);
  const auto q = quadratic_hamiltonian_from(r.hamiltonian.H);
  REQUIRE(q.has_value());
  const ReverseResult back = legendre_reverse(*q, Number(1));
  CHECK(is_zero(back.lagrangian.lagrangian() - l.lagrangian()).ok);
}

TEST_CASE("the free scale alpha1 scales the coefficients and H") {
  const QuadraticLagrangian l{Number(3), Number(2), Number(1), parse("q^2")};
  const LegendreResult a = legendre_forward(l);  // alpha1 = beta
  const LegendreResult b = legendre_forward(l, Number(4));
  CHECK(a.hamiltonian.alphas[0] == Number(2));
  CHECK(proportional(a.hamiltonian.alphas, b.hamiltonian.alphas));
  CHECK(is_zero(shift(b.momentum_map->pm, +1) - b.momentum_map->p).ok);
  // p = (beta/alpha1) qd
  CHECK(is_zero(b.momentum_map->p - Expr(Number::rational(1, 2)) * Expr(sym::qd)).ok);
}

TEST_CASE("forward transform preconditions") {
  CHECK_THROWS_AS(legendre_forward(oracle::example1_l(), Number(0)), DomainError);
  const QuadraticLagrangian negative{Number(-1), Number(1), Number(-1), Expr()};
  CHECK(negative.degenerate());
  CHECK_THROWS_AS(legendre_forward(negative), DomainError);
}

TEST_CASE("reverse transform") {
  const QuadraticHamiltonian h1{Number(0), Number(1), Number(0), parse("q*qm")};
  const ReverseResult r1 = legendre_reverse(h1, Number(1));
  CHECK(same_alphas(r1.alphas, alphas(1, 0, 0, 1)));
  CHECK(structurally_equal(canonical(r1.lagrangian.lagrangian()),
                           canonical(parse("qd*qdm - q*qm"))));
  CHECK(is_zero(r1.velocity_map.qd - parse("p")).ok);

  const QuadraticHamiltonian h2{Number(1), Number(1), Number(1), parse("(q + qm)^2/2")};
  const ReverseResult r2 = legendre_reverse(h2, Number(1));
  CHECK(same_alphas(r2.alphas, alphas(1, 1, 1, 1)));
  CHECK(structurally_equal(canonical(r2.lagrangian.lagrangian()),
                           canonical(parse("1/2*qd^2 + qd*qdm + 1/2*qdm^2 - (q + qm)^2/2"))));
  CHECK(is_zero(r2.lagrangian.lagrangian() - parse("(qd + qdm)^2/2 - (q + qm)^2/2")).ok);

  CHECK_THROWS_AS(legendre_reverse(h1, Number(0)), DomainError);
}

TEST_CASE("forward then reverse returns the Lagrangian") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> c(-4, 4);
  int tried = 0;
  while (tried < 20) {
    const QuadraticLagrangian l{Number(c(rng)), Number(c(rng)), Number(c(rng)), parse("q*qm")};
    if (l.beta.is_zero() || l.degenerate()) continue;
    ++tried;
    const LegendreResult f = legendre_forward(l);
    const auto q = quadratic_hamiltonian_from(f.hamiltonian.H);
    REQUIRE(q.has_value());
    const ReverseResult r = legendre_reverse(*q, f.hamiltonian.alphas[0]);
    CHECK(structurally_equal(canonical(r.lagrangian.lagrangian()), canonical(l.lagrangian())));
    CHECK(same_alphas(r.alphas, f.hamiltonian.alphas));
  }
}

TEST_CASE("quadratic_hamiltonian_from rejects other shapes") {
  CHECK_FALSE(quadratic_hamiltonian_from(parse("p^3 + q")).has_value());
  CHECK_FALSE(quadratic_hamiltonian_from(parse("p*q")).has_value());
  CHECK_FALSE(quadratic_hamiltonian_from(parse("p^2")).has_value());  // B = 0
  CHECK(quadratic_hamiltonian_from(parse("p*pm + q*qm")).has_value());
}

TEST_CASE("alternative coefficients are proportional to the standard ones") {
  CHECK(proportional(alphas_alternative(oracle::example1_l()), alphas(1, 0, 0, 1)));
  CHECK(proportional(alphas_alternative(oracle::example2_l()), alphas(1, 1, 1, 1)));
  CHECK(proportional(alphas_alternative(QuadraticLagrangian{Number(2), Number(1), Number(0), Expr()}),
                     alphas(1, 0, 2, 1)));
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> c(-5, 5);
  int tried = 0;
  while (tried < 20) {
    const QuadraticLagrangian l{Number(c(rng)), Number(c(rng)), Number(c(rng)), Expr()};
    if (l.beta.is_zero()) continue;
    ++tried;
    const Alphas standard{l.beta, l.gamma, l.alpha, l.beta};
    CHECK(proportional(alphas_alternative(l), standard));
  }
}

TEST_CASE("non-Legendre coefficients give structurally different equations") {
  const DelayHamiltonian ex1 = oracle::example1_h();
  const DelayHamiltonian d{ex1.H, alphas(0, 0, 1, 0)};
  const Residuals r1 = variational_residuals(ex1);
  const Residuals rd = variational_residuals(d);
  CHECK(is_zero(rd.rp - parse("qd - pp - pm")).ok);
  // Not proportional: the ratio differs between two sample points.
  const JetPoint a = random_jet(5, 0);
  const JetPoint b = random_jet(5, 1);
  CHECK(std::abs(eval(rd.rp, a) * eval(r1.rp, b) - eval(rd.rp, b) * eval(r1.rp, a)) > 1e-3);
  CHECK(std::abs(eval(rd.rq, a) * eval(r1.rq, b) - eval(rd.rq, b) * eval(r1.rq, a)) > 1e-3);
}

TEST_CASE("extended transform reduces to the constant-coefficient case") {
  ExtendedLagrangian l;
  l.alpha = Expr(0);
  l.beta = Expr(1);
  l.gamma = Expr(0);
  l.lambda = Expr(0);
  l.mu = Expr(1);
  l.phi = parse("q*qm");
  const ExtendedLegendre e = legendre_extended(l);
  CHECK(is_zero(e.H - parse("p*pm + q*qm")).ok);
  const char* expected[] = {"1", "0", "0", "1"};
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_zero(e.alphas[i] - parse(expected[i])).ok);

  ExtendedLagrangian m = l;
  m.alpha = Expr(3);
  m.beta = Expr(2);
  m.gamma = Expr(-1);
  const ExtendedLegendre em = legendre_extended(m);
  const QuadraticLagrangian ql{Number(3), Number(2), Number(-1), parse("q*qm")};
  CHECK(structurally_equal(canonical(em.H), canonical(legendre_forward(ql).hamiltonian.H)));
}

TEST_CASE("extended transform with mu = 2, lambda = q") {
  ExtendedLagrangian l;
  l.alpha = Expr(1);
  l.beta = Expr(2);
  l.gamma = Expr(1);
  l.lambda = parse("q");
  l.mu = Expr(2);
  l.phi = parse("q*qm + qm^2/2");
  const ExtendedLegendre e = legendre_extended(l);
  CHECK(is_zero(e.H - parse("1/2*(2*p + q)^2 + 2*(2*p + q)*(2*pm + qm) + 1/2*(2*pm + qm)^2 + "
                            "q*qm + qm^2/2"))
            .ok);
  const char* expected[] = {"4", "2", "2", "4"};
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_zero(e.alphas[i] - parse(expected[i])).ok);

  const ExtendedResiduals r = extended_residuals(e);
  const Expr els = extended_elsgolts_residual(l);
  CHECK(is_zero(els - elsgolts_operator(l.lagrangian())).ok);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const JetPoint j = extended_jet(i, 2.0);
    CHECK(std::abs(eval(r.rp, j)) < 1e-12);
    CHECK(eval(r.rq, j) == doctest::Approx(eval(els, j)).epsilon(1e-10));
  }
}

TEST_CASE("extended transform rejects a vanishing mu") {
  ExtendedLagrangian l;
  l.alpha = Expr(1);
  l.mu = parse("q - q");
  CHECK_THROWS_AS(legendre_extended(l), DomainError);
}
