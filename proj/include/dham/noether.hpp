#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dham/model.hpp"
#include "dham/solver.hpp"

namespace dham {

enum class Classification { Variational, Divergence, None };

const char* to_string(Classification c);

struct InvarianceResidual {
  Expr omega;
  Classification classification = Classification::None;
  std::optional<Expr> v;
  std::optional<Expr> w;
  /// V was found by the template fit rather than supplied.
  bool v_fitted = false;
  ZeroCheck check;
};

struct NoetherQuantities {
  Expr c;
  Expr p_quantity;
  std::optional<Expr> differential_integral;
  std::optional<Expr> difference_integral;
};

/// Invariance criterion in expanded form.
Expr omega(const DelayHamiltonian& h, const Generator& g);

/// X(H~) + H~ D(xi), with X prolonged at all three points.
Expr omega_via_tilde(const DelayHamiltonian& h, const Generator& g);

NoetherQuantities c_and_p(const DelayHamiltonian& h, const Generator& g);

/// Omega - [xi Rt + eta Rq + nu Rp + D(C) + P - S+(P)] for the given C and P.
Expr identity_defect(const DelayHamiltonian& h, const Generator& g, const Expr& c,
                     const Expr& p_quantity);

ZeroCheck verify_hamiltonian_identity(const DelayHamiltonian& h, const Generator& g,
                                      int samples = kDefaultSamples, double tol = kDefaultTol,
                                      std::uint64_t seed = kDefaultSeed);

/// Variational, divergence (supplied or fitted V, optional W) or neither.
InvarianceResidual classify_invariance(const DelayHamiltonian& h, const Generator& g,
                                       const std::optional<Expr>& v = std::nullopt,
                                       const std::optional<Expr>& w = std::nullopt,
                                       std::uint64_t seed = kDefaultSeed);

/// Jet points satisfying Rp = Rq = 0 and D(Rp) = D(Rq) = 0 at the base time.
/// The highest-shift velocity slot with a nonzero coefficient is solved for.
JetSampler on_shell_sampler(const DelayHamiltonian& h, std::uint64_t seed = kDefaultSeed);

/// I = C - V, checked by D(I) = 0 at on-shell jets. Throws VerificationError
/// with the largest residual otherwise.
Expr differential_integral(const DelayHamiltonian& h, const NoetherQuantities& nq, const Expr& v,
                           std::uint64_t seed = kDefaultSeed);

/// J = P - W, checked by (S+ - 1)J = 0 at on-shell jets.
Expr difference_integral(const DelayHamiltonian& h, const NoetherQuantities& nq, const Expr& w,
                         std::uint64_t seed = kDefaultSeed);

struct IntegralSearch {
  std::optional<Expr> integral;
  /// Fitted V_P (differential) or W_P (difference).
  std::optional<Expr> part;
  ZeroCheck check;
  std::string note;
};

/// Looks for V_P with (S+ - 1)(P - W) = D(V_P) and returns I = C - V - V_P.
/// Only generators with xi = 0 are considered.
IntegralSearch find_differential_integral(const DelayHamiltonian& h, const Generator& g,
                                          const InvarianceResidual& inv,
                                          std::uint64_t seed = kDefaultSeed);

/// Looks for W_P with D(C - V) = (S+ - 1)W_P and returns J = P - W - W_P.
IntegralSearch find_difference_integral(const DelayHamiltonian& h, const Generator& g,
                                        const InvarianceResidual& inv,
                                        std::uint64_t seed = kDefaultSeed);

enum class IntegralKind { Differential, Difference };

struct DriftReport {
  double max_deviation = 0.0;
  double time_of_max = 0.0;
  double reference = 0.0;
  std::size_t nodes = 0;
};

/// Differential: max |I(t) - I(t_first)|. Difference: max |J(t + tau) - J(t)|.
/// Base times start just after t0 - tau, where the stepped relations hold.
DriftReport drift(const Expr& integral, const Trajectory& traj, IntegralKind kind);

/// max |e| over the same base nodes.
DriftReport max_along(const Expr& e, const Trajectory& traj);

struct ConstraintReport {
  DriftReport integral;
  DriftReport constraint;
  bool violated = false;
};

/// I = C monitored together with the constraint (S+ - 1)P = 0.
ConstraintReport monitor_constrained_integral(const DelayHamiltonian& h, const Generator& g,
                                              const Trajectory& traj, double tol = 1e-6);

struct IdentityReport {
  ZeroCheck var_p;
  ZeroCheck var_q;
  ZeroCheck var_t;
  ZeroCheck var_quasi;

  bool ok() const { return var_p.ok && var_q.ok && var_t.ok && var_quasi.ok; }
};

/// Variations of Omega against the prolonged action on the residuals.
IdentityReport variational_derivative_identities(const DelayHamiltonian& h, const Generator& g,
                                                 int samples = kDefaultSamples,
                                                 double tol = kDefaultTol,
                                                 std::uint64_t seed = kDefaultSeed);

struct GeneratorReport {
  std::string name;
  InvarianceResidual invariance;
  NoetherQuantities quantities;
  ZeroCheck identity;
  IntegralSearch differential;
  IntegralSearch difference;
  std::vector<std::string> notes;
};

GeneratorReport analyze_generator(const DelayHamiltonian& h, const Generator& g,
                                  const std::optional<Expr>& v = std::nullopt,
                                  const std::optional<Expr>& w = std::nullopt,
                                  std::uint64_t seed = kDefaultSeed);

}  // namespace dham
