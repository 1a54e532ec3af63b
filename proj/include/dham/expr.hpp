#pragma once

#include <bitset>
#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dham/number.hpp"
#include "dham/symbol.hpp"

namespace dham {

enum class Kind { Const, Sym, Tau, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct Node;

/// Immutable expression over the delay jet space. Cheap to copy.
///
/// The arithmetic operators fold constants and drop neutral elements; use
/// make_raw() to build a node exactly as given.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(Number n);  // NOLINT
  Expr(Symbol s);  // NOLINT
  template <std::integral I>
  Expr(I value) : Expr(Number(value)) {}  // NOLINT
  template <std::floating_point F>
  Expr(F value) : Expr(Number::from_double(static_cast<double>(value))) {}  // NOLINT

  /// Empty child slot of a leaf node; not a usable expression.
  struct NoChild {};
  explicit Expr(NoChild) {}

  static Expr tau();
  static Expr make_raw(Kind kind, Expr a, Expr b = Expr(), int exponent = 0);

  Kind kind() const;
  const Node& node() const { return *node_; }
  const Expr& lhs() const;
  const Expr& rhs() const;
  const Number& number() const;
  Symbol symbol() const;
  int exponent() const;

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero_const() const;
  bool is_one_const() const;
  bool same_node(const Expr& other) const { return node_ == other.node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind = Kind::Const;
  Number value;
  Symbol symbol;
  int exponent = 0;
  Expr a{Expr::NoChild{}};
  Expr b{Expr::NoChild{}};
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
/// Throws DomainError when `b` is the literal constant zero.
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr exp(const Expr& x);

inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr sum(const std::vector<Expr>& terms);

// Structure

int compare(const Expr& a, const Expr& b);
bool structurally_equal(const Expr& a, const Expr& b);

/// Normal form: constants folded, sums and products flattened, like terms and
/// like factors merged, children sorted. No distribution over sums.
Expr canonical(const Expr& e);

std::size_t node_count(const Expr& e);

// Text

std::string to_string(const Expr& e);

/// Recursive-descent parser for the jet-space grammar. The tree is built
/// exactly as written (no folding).
Expr parse(std::string_view source);

// Calculus

Expr partial(const Expr& e, Symbol s);

/// Three-point total derivative. Throws DomainError on second-order symbols.
Expr total_derivative(const Expr& e);

/// S+ for direction +1, S- for -1. Throws ShiftRangeError when a symbol would
/// leave the shift window.
Expr shift(const Expr& e, int direction);

Expr substitute(const Expr& e, const std::map<std::size_t, Expr>& by_symbol_index);
Expr substitute(const Expr& e, Symbol s, const Expr& replacement);

using SymbolSet = std::bitset<kSymbolCount>;

SymbolSet symbols_of(const Expr& e);
bool uses_tau(const Expr& e);
/// True when every symbol of `e` is in `allowed`.
bool only_uses(const Expr& e, std::initializer_list<Symbol> allowed);

}  // namespace dham
