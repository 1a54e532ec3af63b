#pragma once

#include <array>
#include <string>

#include "dham/expr.hpp"
#include "dham/jet.hpp"

namespace dham {

using Alphas = std::array<Number, 4>;

std::string to_string(const Alphas& a);

/// L = alpha/2 qd^2 + beta qd qdm + gamma/2 qdm^2 - phi(q, qm).
struct QuadraticLagrangian {
  Number alpha;
  Number beta{1};
  Number gamma;
  Expr phi;

  /// Throws DomainError on beta = 0 or a phi outside {q, qm}.
  void validate() const;
  bool degenerate() const;
  Expr lagrangian() const;
};

/// Delay Hamiltonian H(t, tm, q, qm, p, pm) with the coefficients of the
/// action integrand pm(a1 qd + a2 qdm) + p(a3 qd + a4 qdm) - H.
struct DelayHamiltonian {
  Expr H;
  Alphas alphas{Number(1), Number(0), Number(0), Number(1)};

  void validate() const;
};

/// H = A/2 p^2 + B p pm + C/2 pm^2 + phi(q, qm).
struct QuadraticHamiltonian {
  Number A;
  Number B{1};
  Number C;
  Expr phi;

  void validate() const;
  Expr hamiltonian() const;
};

/// X = xi d/dt + eta d/dq + nu d/dp with coefficients in {t, q, p}.
struct Generator {
  Expr xi;
  Expr eta;
  Expr nu;
  std::string name;

  void validate() const;
};

Generator operator+(const Generator& a, const Generator& b);
Generator operator*(const Number& c, const Generator& g);

struct Residuals {
  Expr rp;
  Expr rq;
  Expr rt;
};

Expr tilde_h(const DelayHamiltonian& h);

/// Variations of the action with respect to p, q and t, in closed form.
Residuals variational_residuals(const DelayHamiltonian& h);

Expr elsgolts_residual(const QuadraticLagrangian& l);

/// dL/dq + S+(dL/dqm) - D(dL/dqd + S+(dL/dqdm)) for any L(t, q, qm, qd, qdm).
Expr elsgolts_operator(const Expr& lagrangian);

/// xi Rt + eta Rq + nu Rp.
Expr local_extremal_residual(const DelayHamiltonian& h, const Generator& g);

struct Prolongation {
  Expr zeta_eta;
  Expr zeta_nu;
  Expr zeta_eta2;
  Expr zeta_nu2;
};

/// First and second prolongation coefficients at the unshifted point.
Prolongation prolong(const Generator& g);

/// Prolonged generator acting on f, with shifted copies at all three points.
Expr apply_prolonged(const Generator& g, const Expr& f);

/// xi depends on t alone and D(xi) is tau-periodic.
bool xi_admissible(const Generator& g, int samples = kDefaultSamples, double tol = kDefaultTol,
                   std::uint64_t seed = kDefaultSeed);

}  // namespace dham
