#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dham/jet.hpp"

namespace dham {

/// Monomials of degree 1 and 2 in {q, qm, qp, p, pm, pp} times the time
/// factors {1, sin t, cos t, sin tm, cos tm, t}.
std::vector<Expr> divergence_dictionary();

/// Monomials of degree 1 and 2 in {q, qm, p, pm, qd, qdm, pd, pdm} times the
/// same time factors.
std::vector<Expr> difference_dictionary();

struct FitResult {
  bool found = false;
  /// sum c_i m_i with the fitted coefficients.
  Expr expr;
  double lsq_residual = 0.0;
  ZeroCheck check;
};

/// Finds coefficients c such that op(sum c_i m_i) matches `target` at the
/// sampled jets, then re-verifies the snapped combination on fresh samples.
/// `op` must be linear.
FitResult fit_template(const std::vector<Expr>& basis, const std::function<Expr(const Expr&)>& op,
                       const Expr& target, const JetSampler& fit_jets,
                       const JetSampler& check_jets, double tol = kDefaultTol);

/// Closest p/q with q <= max_den when within `tol`; otherwise the value itself.
Number snap_rational(double value, int max_den = 24, double tol = 1e-8);

}  // namespace dham
