#pragma once

#include "dham/expr.hpp"

namespace dham {

/// Three-point vertical variation with respect to q (base Q) or p (base P):
/// sum over shifts s of S_{-s}(df/dx_s - D df/dxd_s).
Expr variational_derivative(const Expr& f, Base base);

/// Three-point horizontal variation:
/// sum over shifts s of S_{-s}(df/dt_s + D(qd_s df/dqd_s + pd_s df/dpd_s)) - D f.
Expr variational_derivative_t(const Expr& f);

}  // namespace dham
