#pragma once

#include <array>
#include <optional>

#include "dham/model.hpp"

namespace dham {

/// p and pm as functions of qd and qdm.
struct MomentumMap {
  Expr p;
  Expr pm;
};

/// qd and qdm as functions of p and pm.
struct VelocityMap {
  Expr qd;
  Expr qdm;
};

struct LegendreResult {
  DelayHamiltonian hamiltonian;
  /// Absent in the degenerate case, where only `merged_relation` holds.
  std::optional<MomentumMap> momentum_map;
  std::optional<VelocityMap> inverse_map;
  /// Degenerate case: the single relation between (p, pm) and (qd, qdm),
  /// written as lhs - rhs.
  std::optional<Expr> merged_relation;
  bool degenerate = false;
};

/// L -> H. `alpha1` is the free scale of the coefficients.
LegendreResult legendre_forward(const QuadraticLagrangian& l, const Number& alpha1);
LegendreResult legendre_forward(const QuadraticLagrangian& l);  // alpha1 = beta

struct ReverseResult {
  QuadraticLagrangian lagrangian;
  Alphas alphas;
  VelocityMap velocity_map;
};

/// H -> L for a quadratic Hamiltonian.
ReverseResult legendre_reverse(const QuadraticHamiltonian& h, const Number& alpha1);
ReverseResult legendre_reverse(const QuadraticHamiltonian& h);  // alpha1 = B

/// Recovers (A, B, C, phi) from an expression of the quadratic form, if it is one.
std::optional<QuadraticHamiltonian> quadratic_hamiltonian_from(const Expr& H);

/// Coefficients from the point-transformation relations (alpha_i p = c_i qd after
/// the compatibility shift), normalized so that the first one equals beta.
Alphas alphas_alternative(const QuadraticLagrangian& l);

/// Lagrangian with state-dependent coefficients and a linear velocity term:
/// alpha/2 qd^2 + beta qd qdm + gamma/2 qdm^2 - (alpha lam + beta lamm) qd
/// - (beta lam + gamma lamm) qdm - phi.
struct ExtendedLagrangian {
  Expr alpha;
  Expr beta{1};
  Expr gamma;
  Expr lambda;
  Expr mu{1};
  Expr phi;

  void validate() const;
  Expr lagrangian() const;
};

struct ExtendedLegendre {
  Expr H;
  std::array<Expr, 4> alphas;
  /// qd = mu(q) p + lambda(q), and its shift.
  VelocityMap velocity_map;
};

/// Throws DomainError when mu vanishes at a sampled point.
ExtendedLegendre legendre_extended(const ExtendedLagrangian& l, std::uint64_t seed = kDefaultSeed);

/// Vertical variations of pm(a1 qd + a2 qdm) + p(a3 qd + a4 qdm) - H with
/// expression coefficients.
struct ExtendedResiduals {
  Expr rp;
  Expr rq;
};

ExtendedResiduals extended_residuals(const ExtendedLegendre& e);

/// Closed-form Elsgolts residual of the extended Lagrangian, with the
/// derivative of lambda taken with respect to its argument.
Expr extended_elsgolts_residual(const ExtendedLagrangian& l);

}  // namespace dham
