#include <cmath>

#include "doctest.h"
#include "dham/error.hpp"
#include "dham/noether.hpp"
#include "support/oracle.hpp"

using namespace dham;
using oracle::gen;

namespace {

const Generator kX1 = gen("0", "sin(t)", "cos(t)", "X1");
const Generator kX2 = gen("0", "cos(t)", "-sin(t)", "X2");
const Generator kX3 = gen("1", "0", "0", "X3");
const Generator kX4 = gen("0", "q", "p", "X4");
const Generator kX5 = gen("0", "p", "-q", "X5");

History sin_cos_history() { return History{0.0, 1.0, parse("sin(t)"), parse("cos(t)")}; }

}  // namespace

TEST_CASE("invariance criterion of the first example") {
  const DelayHamiltonian h = oracle::example1_h();
  CHECK(is_zero(omega(h, kX1) - total_derivative(parse("cos(tm)*q + cos(t)*qm"))).ok);
  CHECK(is_zero(omega(h, gen("0", "0", "0"))).ok);
  CHECK(is_zero(omega(h, kX3)).ok);
  CHECK(is_zero(omega(h, kX4) - Expr(2) * tilde_h(h)).ok);
}

TEST_CASE("expanded and tilde forms of the criterion agree") {
  for (const auto& h : {oracle::example1_h(), oracle::example2_h()}) {
    for (const Generator& g : {kX1, kX2, kX3, kX4, kX5, gen("t", "q*t", "sin(p)")}) {
      CHECK_MESSAGE(is_zero(omega(h, g) - omega_via_tilde(h, g)).ok, g.name);
    }
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DelayHamiltonian h = oracle::random_quadratic_h(300 + s);
    const Generator g = oracle::random_polynomial_generator(400 + s, true);
    CHECK(is_zero(omega(h, g) - omega_via_tilde(h, g)).ok);
  }
}

TEST_CASE("C and P of the first example") {
  const DelayHamiltonian h = oracle::example1_h();
  const NoetherQuantities x1 = c_and_p(h, kX1);
  CHECK(is_zero(x1.c - parse("sin(t)*(pp + pm)")).ok);
  CHECK(is_zero(x1.p_quantity - parse("cos(tm)*qd - sin(tm)*q")).ok);
  const NoetherQuantities x5 = c_and_p(h, kX5);
  CHECK(is_zero(x5.c - parse("p*(pp + pm)")).ok);
  CHECK(is_zero(x5.p_quantity - parse("p*pdm - qm*qd - q*pm + qm*p")).ok);
}

TEST_CASE("the Hamiltonian identity holds for the example generators") {
  for (const Generator& g : {kX1, kX2, kX4, kX5}) {
    CHECK_MESSAGE(verify_hamiltonian_identity(oracle::example1_h(), g).ok, g.name);
  }
  CHECK(verify_hamiltonian_identity(oracle::example1_h(), kX3).ok);
  CHECK(verify_hamiltonian_identity(oracle::example2_h(), kX1).ok);
  CHECK(verify_hamiltonian_identity(oracle::example2_h(), kX2).ok);
}

TEST_CASE("the Hamiltonian identity holds for random quadratic H and generators") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DelayHamiltonian h = oracle::random_quadratic_h(10 + s);
    const Generator g = oracle::random_polynomial_generator(50 + s, s % 2 == 0);
    const ZeroCheck c = verify_hamiltonian_identity(h, g);
    CHECK_MESSAGE(c.ok, to_string(h.H));
  }
}

TEST_CASE("a corrupted C breaks the identity with a witness") {
  const DelayHamiltonian h = oracle::example1_h();
  const NoetherQuantities nq = c_and_p(h, kX1);
  CHECK(is_zero(identity_defect(h, kX1, nq.c, nq.p_quantity)).ok);
  const ZeroCheck bad = is_zero(identity_defect(h, kX1, nq.c + Expr(sym::q), nq.p_quantity));
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.has_value());
}

TEST_CASE("classification of the first example") {
  const DelayHamiltonian h = oracle::example1_h();
  CHECK(classify_invariance(h, kX3).classification == Classification::Variational);

  const InvarianceResidual x1 = classify_invariance(h, kX1);
  CHECK(x1.classification == Classification::Divergence);
  REQUIRE(x1.v.has_value());
  CHECK(x1.v_fitted);
  CHECK(is_zero(omega(h, kX1) - total_derivative(*x1.v)).ok);

  CHECK(classify_invariance(h, kX4).classification == Classification::None);

  // Omega_5 is the total derivative of p pm - q qm, which differs from D(-H).
  const InvarianceResidual x5 = classify_invariance(h, kX5);
  CHECK(x5.classification == Classification::Divergence);
  REQUIRE(x5.v.has_value());
  CHECK(is_zero(total_derivative(*x5.v) - total_derivative(parse("p*pm - q*qm"))).ok);
  CHECK_FALSE(is_zero(omega(h, kX5) - total_derivative(-h.H)).ok);
}

TEST_CASE("a supplied V is checked rather than fitted") {
  const DelayHamiltonian h = oracle::example1_h();
  const InvarianceResidual good =
      classify_invariance(h, kX1, parse("cos(tm)*q + cos(t)*qm"));
  CHECK(good.classification == Classification::Divergence);
  CHECK_FALSE(good.v_fitted);
  const InvarianceResidual bad = classify_invariance(h, kX1, parse("q*qm"));
  CHECK(bad.classification == Classification::None);
}

TEST_CASE("the dilation-type generator without Legendre coefficients") {
  DelayHamiltonian h = oracle::example1_h();
  h.alphas = {Number(0), Number(0), Number(1), Number(0)};
  const InvarianceResidual x2 = classify_invariance(h, kX4);
  CHECK(x2.classification == Classification::None);
  CHECK(is_zero(x2.omega - Expr(2) * tilde_h(h)).ok);
  const GeneratorReport r = analyze_generator(h, kX4);
  CHECK_FALSE(r.differential.integral.has_value());
  CHECK_FALSE(r.difference.integral.has_value());
}

TEST_CASE("the sign-swap generator without Legendre coefficients is a divergence symmetry") {
  DelayHamiltonian h = oracle::example1_h();
  h.alphas = {Number(0), Number(0), Number(1), Number(0)};
  // X(H~) = p qd - q pd for H~ = p qd - H.
  const InvarianceResidual x3 = classify_invariance(h, kX5);
  CHECK(x3.classification == Classification::Divergence);
  CHECK(is_zero(x3.omega - total_derivative(parse("(p^2 - q^2)/2"))).ok);
}

TEST_CASE("differential integral from a supplied V") {
  const DelayHamiltonian h = oracle::example1_h();
  const NoetherQuantities nq = c_and_p(h, kX1);
  // V_Omega plus the part V_P with D(V_P) = (S+ - 1) P.
  const Expr v = parse("cos(tm)*q + cos(t)*qm") + parse("cos(t)*qp - cos(tm)*q");
  const Expr i = differential_integral(h, nq, v);
  CHECK(is_zero(i - oracle::ex1_i1()).ok);
  CHECK_THROWS_AS(differential_integral(h, nq, parse("q")), VerificationError);
}

TEST_CASE("differential integrals found for both examples") {
  struct Case {
    DelayHamiltonian h;
    Generator g;
    Expr expected;
  };
  const Case cases[] = {
      {oracle::example1_h(), kX1, oracle::ex1_i1()},
      {oracle::example1_h(), kX2, oracle::ex1_i2()},
      {oracle::example2_h(), kX1, oracle::ex2_i1()},
      {oracle::example2_h(), kX2, oracle::ex2_i2()},
  };
  for (const Case& c : cases) {
    const InvarianceResidual inv = classify_invariance(c.h, c.g);
    REQUIRE(inv.classification == Classification::Divergence);
    const IntegralSearch found = find_differential_integral(c.h, c.g, inv);
    REQUIRE_MESSAGE(found.integral.has_value(), found.note);
    CHECK_MESSAGE(is_zero(*found.integral - c.expected).ok, to_string(*found.integral));
  }
}

TEST_CASE("no difference integral for the sign-swap generator") {
  const DelayHamiltonian h = oracle::example1_h();
  const InvarianceResidual inv = classify_invariance(h, kX5);
  CHECK_FALSE(find_difference_integral(h, kX5, inv).integral.has_value());
  CHECK_THROWS_AS(difference_integral(h, c_and_p(h, kX5), parse("q*p")), VerificationError);
}

TEST_CASE("differential integral of a momentum shift") {
  const DelayHamiltonian h{parse("p*pm"), {Number(1), Number(0), Number(0), Number(1)}};
  const Generator g = gen("0", "1", "0");
  const GeneratorReport r = analyze_generator(h, g);
  CHECK(r.invariance.classification == Classification::Variational);
  REQUIRE(r.differential.integral.has_value());
  CHECK(is_zero(*r.differential.integral - parse("pp + pm")).ok);
}

TEST_CASE("integrals are only searched for when xi vanishes") {
  const DelayHamiltonian h = oracle::example1_h();
  const InvarianceResidual inv = classify_invariance(h, kX3);
  const IntegralSearch s = find_differential_integral(h, kX3, inv);
  CHECK_FALSE(s.integral.has_value());
  CHECK_FALSE(s.note.empty());
}

TEST_CASE("variational derivative identities") {
  const DelayHamiltonian h = oracle::example1_h();
  CHECK(variational_derivative_identities(h, kX1).ok());
  CHECK(variational_derivative_identities(h, kX3).ok());
  CHECK(variational_derivative_identities(oracle::example2_h(), kX2).ok());
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DelayHamiltonian r = oracle::random_quadratic_h(700 + s);
    CHECK(variational_derivative_identities(r, gen("t", "q", "p")).ok());
  }
}

TEST_CASE("the variation of Omega_4 in p carries the factor two") {
  const DelayHamiltonian h = oracle::example1_h();
  const Expr o = omega(h, kX4);
  const Expr ht = tilde_h(h);
  const auto delta_p = [](const Expr& e) {
    return partial(e, sym::p) + shift(partial(e, sym::pm), +1) -
           total_derivative(partial(e, sym::pd) + shift(partial(e, sym::pdm), +1));
  };
  CHECK(is_zero(delta_p(o) - Expr(2) * delta_p(ht)).ok);
  CHECK_FALSE(is_zero(delta_p(o) - delta_p(ht)).ok);
}

TEST_CASE("Omega is linear in the generator") {
  const DelayHamiltonian h = oracle::example2_h();
  const Number k = Number::rational(5, 3);
  const Expr lhs = omega(h, kX1 + k * kX4);
  const Expr rhs = omega(h, kX1) + Expr(k) * omega(h, kX4);
  CHECK(is_zero(lhs - rhs).ok);
}

TEST_CASE("drift along a numerical trajectory") {
  const DelayHamiltonian h = oracle::example1_h();
  const Trajectory traj = step_hamiltonian(h, sin_cos_history(), 10.0, 64);
  CHECK(drift(Expr(1), traj, IntegralKind::Differential).max_deviation == 0.0);
  CHECK(drift(Expr(sym::q), traj, IntegralKind::Differential).max_deviation > 0.5);
  const DriftReport i1 = drift(oracle::ex1_i1(), traj, IntegralKind::Differential);
  CHECK(i1.max_deviation <= 1e-5);
  CHECK(i1.nodes > 0);
  CHECK(drift(oracle::ex1_i2(), traj, IntegralKind::Differential).max_deviation <= 1e-5);
}

TEST_CASE("the conservation law residual converges with finite-difference derivatives") {
  const DelayHamiltonian h = oracle::example1_h();
  const NoetherQuantities nq = c_and_p(h, kX1);
  const InvarianceResidual inv = classify_invariance(h, kX1);
  REQUIRE(inv.v.has_value());
  const Expr law = total_derivative(nq.c - *inv.v) - (shift(nq.p_quantity, +1) - nq.p_quantity);
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const Trajectory traj = step_hamiltonian(h, sin_cos_history(), 6.0, n);
    errors.push_back(max_along(law, oracle::with_fd_derivatives(traj)).max_deviation);
  }
  const std::vector<double> orders = oracle::observed_orders(errors);
  for (double o : orders) CHECK(o >= 3.0);
  CHECK(errors.back() <= 1e-6);
}

TEST_CASE("constrained integral monitor") {
  const DelayHamiltonian h = oracle::example1_h();
  const Trajectory traj = step_hamiltonian(h, sin_cos_history(), 6.0, 64);
  const ConstraintReport r = monitor_constrained_integral(h, kX1, traj);
  CHECK(r.violated);
  CHECK(r.constraint.max_deviation > 1e-3);
}
