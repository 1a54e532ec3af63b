#include "dham/error.hpp"
#include "dham/expr.hpp"

namespace dham {
namespace {

// Generic chain-rule walk. `leaf` gives the derivative of a symbol.
template <typename Leaf>
Expr differentiate(const Expr& e, const Leaf& leaf) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::Tau: return Expr();
    case Kind::Sym: return leaf(e.symbol());
    case Kind::Add: return differentiate(e.lhs(), leaf) + differentiate(e.rhs(), leaf);
    case Kind::Sub: return differentiate(e.lhs(), leaf) - differentiate(e.rhs(), leaf);
    case Kind::Neg: return -differentiate(e.lhs(), leaf);
    case Kind::Mul:
      return differentiate(e.lhs(), leaf) * e.rhs() + e.lhs() * differentiate(e.rhs(), leaf);
    case Kind::Div: {
      const Expr da = differentiate(e.lhs(), leaf);
      const Expr db = differentiate(e.rhs(), leaf);
      return da / e.rhs() - e.lhs() * db / pow(e.rhs(), 2);
    }
    case Kind::Pow: {
      const Expr db = differentiate(e.lhs(), leaf);
      if (db.is_zero_const()) return Expr();
      return Expr(e.exponent()) * pow(e.lhs(), e.exponent() - 1) * db;
    }
    case Kind::Sin: return cos(e.lhs()) * differentiate(e.lhs(), leaf);
    case Kind::Cos: return -(sin(e.lhs()) * differentiate(e.lhs(), leaf));
    case Kind::Exp: return e * differentiate(e.lhs(), leaf);
  }
  return Expr();
}

template <typename Map>
Expr map_symbols(const Expr& e, const Map& f) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::Tau: return e;
    case Kind::Sym: return f(e.symbol());
    case Kind::Add: return map_symbols(e.lhs(), f) + map_symbols(e.rhs(), f);
    case Kind::Sub: return map_symbols(e.lhs(), f) - map_symbols(e.rhs(), f);
    case Kind::Neg: return -map_symbols(e.lhs(), f);
    case Kind::Mul: return map_symbols(e.lhs(), f) * map_symbols(e.rhs(), f);
    case Kind::Div: return map_symbols(e.lhs(), f) / map_symbols(e.rhs(), f);
    case Kind::Pow: return pow(map_symbols(e.lhs(), f), e.exponent());
    case Kind::Sin: return sin(map_symbols(e.lhs(), f));
    case Kind::Cos: return cos(map_symbols(e.lhs(), f));
    case Kind::Exp: return exp(map_symbols(e.lhs(), f));
  }
  return e;
}

}  // namespace

Expr partial(const Expr& e, Symbol s) {
  return differentiate(e, [&](Symbol x) { return x == s ? Expr(1) : Expr(); });
}

Expr total_derivative(const Expr& e) {
  return differentiate(e, [](Symbol x) {
    if (x.base == Base::T) return Expr(1);
    if (x.order >= 2) {
      throw DomainError("total derivative of second-order symbol '" + x.name() + "'");
    }
    return Expr(x.differentiated());
  });
}

Expr shift(const Expr& e, int direction) {
  if (direction != 1 && direction != -1) throw DomainError("shift direction must be +1 or -1");
  return map_symbols(e, [&](Symbol x) {
    const Symbol y = x.shifted(direction);
    if (!y.valid()) {
      throw ShiftRangeError("shifting '" + x.name() + "' by " + (direction > 0 ? "+1" : "-1") +
                            " leaves the three-point window");
    }
    return Expr(y);
  });
}

Expr substitute(const Expr& e, const std::map<std::size_t, Expr>& by_symbol_index) {
  return map_symbols(e, [&](Symbol x) {
    auto it = by_symbol_index.find(x.index());
    return it == by_symbol_index.end() ? Expr(x) : it->second;
  });
}

Expr substitute(const Expr& e, Symbol s, const Expr& replacement) {
  return substitute(e, {{s.index(), replacement}});
}

}  // namespace dham
