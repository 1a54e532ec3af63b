#include "dham/variational.hpp"

#include "dham/error.hpp"

namespace dham {
namespace {

Expr shift_back(const Expr& e, int from_shift) {
  if (from_shift == 0 || e.is_zero_const()) return e;
  return shift(e, -from_shift);
}

}  // namespace

Expr variational_derivative(const Expr& f, Base base) {
  if (base == Base::T) return variational_derivative_t(f);
  Expr out;
  for (int s = -1; s <= 1; ++s) {
    const Symbol x{base, s, 0};
    const Expr term = partial(f, x) - total_derivative(partial(f, x.differentiated()));
    out += shift_back(term, s);
  }
  return out;
}

Expr variational_derivative_t(const Expr& f) {
  Expr out;
  for (int s = -1; s <= 1; ++s) {
    const Symbol qd{Base::Q, s, 1};
    const Symbol pd{Base::P, s, 1};
    const Expr flux = Expr(qd) * partial(f, qd) + Expr(pd) * partial(f, pd);
    const Expr term = partial(f, Symbol{Base::T, s, 0}) + total_derivative(flux);
    out += shift_back(term, s);
  }
  return out - total_derivative(f);
}

}  // namespace dham
