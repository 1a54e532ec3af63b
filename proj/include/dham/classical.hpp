#pragma once

#include <string>
#include <vector>

#include "dham/model.hpp"

namespace dham {

/// H(t, q, p) of an ordinary (non-delay) Hamiltonian system.
struct ClassicalHamiltonian {
  Expr H;

  void validate() const;
};

/// Rp = qd - H_p, Rq = -pd - H_q, Rt = D(H) - H_t.
Residuals classical_residuals(const ClassicalHamiltonian& h);

/// nu qd + p D(eta) - X(H) - H D(xi).
Expr classical_invariance(const ClassicalHamiltonian& h, const Generator& g);

/// Invariance expression minus its decomposition into residuals and D(p eta - xi H).
/// Vanishes identically for every H and generator.
Expr classical_identity_defect(const ClassicalHamiltonian& h, const Generator& g);

struct ClassicalIntegral {
  Expr integral;
  bool invariant_on_shell = true;
  std::string warning;
};

/// I = p eta - xi H. Warns when the invariance expression does not vanish at
/// sampled solution points.
ClassicalIntegral classical_first_integral(const ClassicalHamiltonian& h, const Generator& g,
                                           std::uint64_t seed = kDefaultSeed);

/// Jet point on the solution manifold: qd, pd and their derivatives follow
/// from the canonical equations.
JetPoint classical_on_shell_jet(const ClassicalHamiltonian& h, std::uint64_t seed,
                                std::uint64_t index);

/// Variations of the invariance expression with respect to p and q.
std::pair<Expr, Expr> classical_invariance_variations(const ClassicalHamiltonian& h,
                                                      const Generator& g);

/// L = a/2 qd^2 + b(t, q) qd - V(t, q) with constant a != 0.
struct ClassicalLagrangian {
  Number a{1};
  Expr b;
  Expr V;

  void validate() const;
  Expr lagrangian() const;
};

/// H = (p - b)^2 / (2a) + V, from p = a qd + b.
ClassicalHamiltonian classical_legendre(const ClassicalLagrangian& l);

/// dL/dq - D(dL/dqd).
Expr euler_lagrange_residual(const Expr& lagrangian);

struct PhaseState {
  double t;
  double q;
  double p;
};

/// Classical fourth-order Runge-Kutta with a fixed step.
std::vector<PhaseState> integrate_rk4(const ClassicalHamiltonian& h, PhaseState start,
                                      double t_end, double step);

/// max |I(t) - I(t0)| along the states, with I a function of t, q, p.
double classical_drift(const Expr& integral, const std::vector<PhaseState>& states);

}  // namespace dham
