#include <cctype>
#include <charconv>
#include <cmath>

#include "dham/error.hpp"
#include "dham/expr.hpp"

namespace dham {
namespace {

// Binding strength used by the printer.
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Add:
    case Kind::Sub: return kSum;
    case Kind::Mul:
    case Kind::Div: return kProduct;
    case Kind::Neg: return kUnary;
    case Kind::Pow: return kPower;
    case Kind::Const: {
      const Number& n = e.number();
      if (n.exact() && n.den() != 1) return kProduct;
      if (n.is_negative()) return kUnary;
      return kAtom;
    }
    default: return kAtom;
  }
}

bool negative_leading(const Expr& e) {
  return e.kind() == Kind::Neg || (e.is_const() && e.number().is_negative());
}

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, int min_prec, bool right, std::string& out) {
  const bool wrap = precedence(e) < min_prec || (right && negative_leading(e));
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print_binary(const Expr& e, int prec, const char* op, std::string& out) {
  print_operand(e.lhs(), prec, false, out);
  out += op;
  print_operand(e.rhs(), prec + 1, true, out);
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Const: out += e.number().to_string(); return;
    case Kind::Sym: out += e.symbol().name(); return;
    case Kind::Tau: out += "tau"; return;
    case Kind::Add: print_binary(e, kSum, " + ", out); return;
    case Kind::Sub: print_binary(e, kSum, " - ", out); return;
    case Kind::Mul: print_binary(e, kProduct, "*", out); return;
    case Kind::Div: print_binary(e, kProduct, "/", out); return;
    case Kind::Neg:
      out += '-';
      print_operand(e.lhs(), kUnary, false, out);
      return;
    case Kind::Pow:
      print_operand(e.lhs(), kAtom, false, out);
      out += '^';
      if (e.exponent() < 0) {
        out += "(" + std::to_string(e.exponent()) + ")";
      } else {
        out += std::to_string(e.exponent());
      }
      return;
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
      out += e.kind() == Kind::Sin ? "sin(" : e.kind() == Kind::Cos ? "cos(" : "exp(";
      print(e.lhs(), out);
      out += ')';
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = Expr::make_raw(Kind::Add, e, term());
      } else if (accept('-')) {
        e = Expr::make_raw(Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = Expr::make_raw(Kind::Mul, e, unary());
      } else if (accept('/')) {
        e = Expr::make_raw(Kind::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::make_raw(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    const bool paren = accept('(');
    const bool neg = accept('-');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    int value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc()) {
      pos_ = start;
      fail("exponent out of range");
    }
    if (paren) expect(')');
    return Expr::make_raw(Kind::Pow, base, Expr(), neg ? -value : value);
  }

  Expr number() {
    const std::size_t start = pos_;
    std::int64_t digits = 0;
    std::int64_t scale = 1;
    bool exact = true;
    bool seen_dot = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        if (__builtin_mul_overflow(digits, 10, &digits) ||
            __builtin_add_overflow(digits, c - '0', &digits)) {
          exact = false;
        }
        if (seen_dot && __builtin_mul_overflow(scale, 10, &scale)) exact = false;
        ++pos_;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        exact = false;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    if (text == ".") {
      pos_ = start;
      fail("malformed number");
    }
    if (exact) return Expr(Number::rational(digits, scale));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr(Number::from_double(value));
  }

  Expr atom() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "sin" || name == "cos" || name == "exp") {
        expect('(');
        Expr arg = expression();
        expect(')');
        const Kind k = name == "sin" ? Kind::Sin : name == "cos" ? Kind::Cos : Kind::Exp;
        return Expr::make_raw(k, arg);
      }
      if (name == "tau") return Expr::tau();
      if (auto s = symbol_from_name(name)) return Expr(*s);
      throw UnknownIdentifier(std::string(name), start);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

Expr parse(std::string_view source) { return Parser(source).run(); }

}  // namespace dham
