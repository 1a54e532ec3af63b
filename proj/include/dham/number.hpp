#pragma once

#include <concepts>
#include <cstdint>
#include <string>

namespace dham {

/// Scalar constant of an expression: an exact rational while the arithmetic
/// stays in 64-bit range, otherwise an IEEE double.
class Number {
 public:
  constexpr Number() = default;

  template <std::integral I>
  constexpr Number(I value) : num_(static_cast<std::int64_t>(value)) {}  // NOLINT

  static Number rational(std::int64_t num, std::int64_t den);

  /// Exact when `value` is a dyadic rational with a small denominator.
  static Number from_double(double value);

  bool exact() const noexcept { return exact_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept;

  bool is_zero() const noexcept { return exact_ ? num_ == 0 : approx_ == 0.0; }
  bool is_one() const noexcept { return exact_ ? (num_ == 1 && den_ == 1) : approx_ == 1.0; }
  bool is_minus_one() const noexcept {
    return exact_ ? (num_ == -1 && den_ == 1) : approx_ == -1.0;
  }
  bool is_negative() const noexcept { return exact_ ? num_ < 0 : approx_ < 0.0; }
  bool is_integer() const noexcept { return exact_ && den_ == 1; }

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  /// Throws DomainError on division by an exact zero.
  friend Number operator/(const Number& a, const Number& b);
  friend bool operator==(const Number& a, const Number& b);

  Number pow(int exponent) const;
  Number abs() const { return is_negative() ? -*this : *this; }

  /// Total order used for canonical sorting (exact before inexact).
  friend int compare(const Number& a, const Number& b);

  /// "3", "-3/2", or the shortest round-trip decimal form of a double.
  std::string to_string() const;

 private:
  static Number inexact(double value);

  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double approx_ = 0.0;
};

/// Square root; exact when both numerator and denominator are perfect squares.
Number sqrt(const Number& x);

}  // namespace dham
