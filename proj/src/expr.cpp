#include "dham/expr.hpp"

#include <algorithm>
#include <utility>

#include "dham/error.hpp"

namespace dham {
namespace {

std::shared_ptr<const Node> leaf_const(const Number& n) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = n;
  return node;
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> z = leaf_const(Number(0));
  return z;
}

bool is_neg_const(const Expr& e) { return e.is_const() && e.number().is_negative(); }

// Coefficient times body split for a folded product: c*x -> (c, x).
bool split_coefficient(const Expr& e, Number& c, Expr& body) {
  if (e.kind() == Kind::Mul && e.lhs().is_const()) {
    c = e.lhs().number();
    body = e.rhs();
    return true;
  }
  return false;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(Number n) : node_(n.is_zero() && n.exact() ? zero_node() : leaf_const(n)) {}

Expr::Expr(Symbol s) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sym;
  node->symbol = s;
  node_ = std::move(node);
}

Expr Expr::tau() {
  static const Expr t = [] {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Tau;
    return Expr(std::shared_ptr<const Node>(std::move(node)));
  }();
  return t;
}

Expr Expr::make_raw(Kind kind, Expr a, Expr b, int exponent) {
  if (kind == Kind::Div && b.is_zero_const()) throw DomainError("division by the constant zero");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->a = std::move(a);
  node->b = std::move(b);
  node->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Kind Expr::kind() const { return node_->kind; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
const Number& Expr::number() const { return node_->value; }
Symbol Expr::symbol() const { return node_->symbol; }
int Expr::exponent() const { return node_->exponent; }
bool Expr::is_zero_const() const { return is_const() && number().is_zero(); }
bool Expr::is_one_const() const { return is_const() && number().is_one(); }

Expr operator-(const Expr& a) {
  switch (a.kind()) {
    case Kind::Const: return Expr(-a.number());
    case Kind::Neg: return a.lhs();
    case Kind::Mul:
      if (a.lhs().is_const()) return Expr(-a.lhs().number()) * a.rhs();
      break;
    default: break;
  }
  return Expr::make_raw(Kind::Neg, a);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero_const()) return b;
  if (b.is_zero_const()) return a;
  if (a.is_const() && b.is_const()) return Expr(a.number() + b.number());
  if (b.kind() == Kind::Neg) return a - b.lhs();
  if (is_neg_const(b)) return a - Expr(-b.number());
  Number c;
  Expr body;
  if (split_coefficient(b, c, body) && c.is_negative()) return a - Expr(-c) * body;
  return Expr::make_raw(Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero_const()) return a;
  if (a.is_zero_const()) return -b;
  if (a.is_const() && b.is_const()) return Expr(a.number() - b.number());
  if (b.kind() == Kind::Neg) return a + b.lhs();
  if (is_neg_const(b)) return a + Expr(-b.number());
  Number c;
  Expr body;
  if (split_coefficient(b, c, body) && c.is_negative()) return a + Expr(-c) * body;
  return Expr::make_raw(Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero_const() || b.is_zero_const()) return Expr();
  if (a.is_one_const()) return b;
  if (b.is_one_const()) return a;
  if (a.is_const() && b.is_const()) return Expr(a.number() * b.number());
  if (b.is_const()) return b * a;
  if (a.is_const() && a.number().is_minus_one()) return -b;
  if (a.kind() == Kind::Neg) return -(a.lhs() * b);
  if (b.kind() == Kind::Neg) return -(a * b.lhs());
  Number c;
  Expr body;
  if (a.is_const() && split_coefficient(b, c, body)) return Expr(a.number() * c) * body;
  if (!a.is_const() && split_coefficient(b, c, body)) return Expr(c) * (a * body);
  if (split_coefficient(a, c, body)) return Expr(c) * (body * b);
  return Expr::make_raw(Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_const()) throw DomainError("division by the constant zero");
  if (a.is_zero_const()) return Expr();
  if (b.is_one_const()) return a;
  if (b.is_const()) return Expr(Number(1) / b.number()) * a;
  return Expr::make_raw(Kind::Div, a, b);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_const()) {
    if (base.number().is_zero()) {
      if (exponent < 0) throw DomainError("zero raised to a negative power");
      return Expr();
    }
    return Expr(base.number().pow(exponent));
  }
  return Expr::make_raw(Kind::Pow, base, Expr(), exponent);
}

Expr sin(const Expr& x) {
  if (x.is_zero_const()) return Expr();
  return Expr::make_raw(Kind::Sin, x);
}

Expr cos(const Expr& x) {
  if (x.is_zero_const()) return Expr(1);
  return Expr::make_raw(Kind::Cos, x);
}

Expr exp(const Expr& x) {
  if (x.is_zero_const()) return Expr(1);
  return Expr::make_raw(Kind::Exp, x);
}

Expr sum(const std::vector<Expr>& terms) {
  Expr s;
  for (const auto& t : terms) s += t;
  return s;
}

namespace {

bool is_unary(Kind k) { return k == Kind::Neg || k == Kind::Sin || k == Kind::Cos || k == Kind::Exp; }
bool is_binary(Kind k) {
  return k == Kind::Add || k == Kind::Sub || k == Kind::Mul || k == Kind::Div;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Const: return compare(a.number(), b.number());
    case Kind::Sym: {
      const auto ia = a.symbol().index(), ib = b.symbol().index();
      return ia == ib ? 0 : (ia < ib ? -1 : 1);
    }
    case Kind::Tau: return 0;
    case Kind::Pow:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      return compare(a.lhs(), b.lhs());
    default: break;
  }
  if (is_unary(a.kind())) return compare(a.lhs(), b.lhs());
  if (is_binary(a.kind())) {
    if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
    return compare(a.rhs(), b.rhs());
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

std::size_t node_count(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::Sym:
    case Kind::Tau: return 1;
    case Kind::Pow: return 1 + node_count(e.lhs());
    default: break;
  }
  if (is_unary(e.kind())) return 1 + node_count(e.lhs());
  return 1 + node_count(e.lhs()) + node_count(e.rhs());
}

namespace {

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

struct Product {
  Number coef{1};
  std::map<Expr, int, ExprLess> factors;

  void absorb(const Expr& c, int power);

  Expr build() const {
    Expr body(1);
    for (const auto& [base, e] : factors) {
      if (e != 0) body = body * pow(base, e);
    }
    return Expr(coef) * body;
  }
};

struct Sum {
  std::map<Expr, Number, ExprLess> terms;
  Number constant{0};

  void absorb(const Expr& c, const Number& sign);

  Expr build() const {
    Expr s(constant);
    for (const auto& [body, coef] : terms) {
      if (!coef.is_zero()) s = s + Expr(coef) * body;
    }
    return s;
  }
};

Expr canonical_product(const Expr& e) {
  Product p;
  p.absorb(e, 1);
  return p.build();
}

Expr canonical_sum(const Expr& e) {
  Sum s;
  s.absorb(e, Number(1));
  return s.build();
}

void Product::absorb(const Expr& e, int power) {
  switch (e.kind()) {
    case Kind::Mul:
      absorb(e.lhs(), power);
      absorb(e.rhs(), power);
      return;
    case Kind::Div:
      absorb(e.lhs(), power);
      absorb(e.rhs(), -power);
      return;
    case Kind::Neg:
      if (power % 2 != 0) coef = -coef;
      absorb(e.lhs(), power);
      return;
    case Kind::Pow: {
      const Expr base = canonical(e.lhs());
      if (base.is_const()) {
        coef = coef * base.number().pow(e.exponent() * power);
        return;
      }
      absorb(base, e.exponent() * power);
      return;
    }
    default: break;
  }
  const Expr c = canonical(e);
  if (c.is_const()) {
    coef = coef * c.number().pow(power);
    return;
  }
  if (c.kind() == Kind::Mul || c.kind() == Kind::Neg || c.kind() == Kind::Pow ||
      c.kind() == Kind::Div) {
    absorb(c, power);
    return;
  }
  factors[c] += power;
}

void Sum::absorb(const Expr& e, const Number& sign) {
  switch (e.kind()) {
    case Kind::Add:
      absorb(e.lhs(), sign);
      absorb(e.rhs(), sign);
      return;
    case Kind::Sub:
      absorb(e.lhs(), sign);
      absorb(e.rhs(), -sign);
      return;
    case Kind::Neg:
      absorb(e.lhs(), -sign);
      return;
    default: break;
  }
  const Expr c = canonical(e);
  if (c.is_const()) {
    constant = constant + sign * c.number();
    return;
  }
  if (c.kind() == Kind::Add || c.kind() == Kind::Sub || c.kind() == Kind::Neg) {
    absorb(c, sign);
    return;
  }
  Number coef(1);
  Expr body = c;
  split_coefficient(c, coef, body);
  auto [it, inserted] = terms.emplace(body, sign * coef);
  if (!inserted) it->second = it->second + sign * coef;
}

}  // namespace

Expr canonical(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::Sym:
    case Kind::Tau: return e;
    case Kind::Sin: return sin(canonical(e.lhs()));
    case Kind::Cos: return cos(canonical(e.lhs()));
    case Kind::Exp: return exp(canonical(e.lhs()));
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg: return canonical_sum(e);
    case Kind::Mul:
    case Kind::Div:
    case Kind::Pow: return canonical_product(e);
  }
  return e;
}

namespace {

void collect_symbols(const Expr& e, SymbolSet& out, bool& tau) {
  switch (e.kind()) {
    case Kind::Const: return;
    case Kind::Sym: out.set(e.symbol().index()); return;
    case Kind::Tau: tau = true; return;
    default: break;
  }
  collect_symbols(e.lhs(), out, tau);
  if (is_binary(e.kind())) collect_symbols(e.rhs(), out, tau);
}

}  // namespace

SymbolSet symbols_of(const Expr& e) {
  SymbolSet s;
  bool tau = false;
  collect_symbols(e, s, tau);
  return s;
}

bool uses_tau(const Expr& e) {
  SymbolSet s;
  bool tau = false;
  collect_symbols(e, s, tau);
  return tau;
}

bool only_uses(const Expr& e, std::initializer_list<Symbol> allowed) {
  SymbolSet mask;
  for (const auto& s : allowed) mask.set(s.index());
  return (symbols_of(e) & ~mask).none();
}

}  // namespace dham
