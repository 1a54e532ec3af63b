#include "dham/number.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "dham/error.hpp"

namespace dham {
namespace {

constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;

bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

bool checked_add(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_add_overflow(a, b, &out);
}

}  // namespace

Number Number::inexact(double value) {
  Number n;
  n.exact_ = false;
  n.num_ = 0;
  n.den_ = 1;
  n.approx_ = value;
  return n;
}

Number Number::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational constant with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) {
      return inexact(static_cast<double>(num) / static_cast<double>(den));
    }
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  Number n;
  n.num_ = g == 0 ? 0 : num / g;
  n.den_ = g == 0 ? 1 : den / g;
  return n;
}

Number Number::from_double(double value) {
  if (!std::isfinite(value)) return inexact(value);
  double scaled = value;
  std::int64_t den = 1;
  for (int k = 0; k <= 40; ++k) {
    if (std::abs(scaled) >= static_cast<double>(kExactLimit)) break;
    if (scaled == std::trunc(scaled)) {
      return rational(static_cast<std::int64_t>(scaled), den);
    }
    scaled *= 2.0;
    den *= 2;
  }
  return inexact(value);
}

double Number::value() const noexcept {
  return exact_ ? static_cast<double>(num_) / static_cast<double>(den_) : approx_;
}

Number Number::operator-() const {
  if (!exact_) return inexact(-approx_);
  if (num_ == INT64_MIN) return inexact(-value());
  return rational(-num_, den_);
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    std::int64_t l = 0, r = 0, n = 0, d = 0;
    if (checked_mul(a.num_, b.den_, l) && checked_mul(b.num_, a.den_, r) &&
        checked_add(l, r, n) && checked_mul(a.den_, b.den_, d)) {
      return Number::rational(n, d);
    }
  }
  return Number::inexact(a.value() + b.value());
}

Number operator-(const Number& a, const Number& b) { return a + (-b); }

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    std::int64_t n = 0, d = 0;
    if (checked_mul(a.num_, b.num_, n) && checked_mul(a.den_, b.den_, d)) {
      return Number::rational(n, d);
    }
  }
  return Number::inexact(a.value() * b.value());
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) throw DomainError("division by zero constant");
  if (a.exact_ && b.exact_) {
    std::int64_t n = 0, d = 0;
    if (checked_mul(a.num_, b.den_, n) && checked_mul(a.den_, b.num_, d)) {
      return Number::rational(n, d);
    }
  }
  return Number::inexact(a.value() / b.value());
}

bool operator==(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.value() == b.value();
}

Number Number::pow(int exponent) const {
  if (exponent < 0) return Number(1) / pow(-exponent);
  Number result(1);
  Number base = *this;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

int compare(const Number& a, const Number& b) {
  if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
  if (a == b) return 0;
  return a.value() < b.value() ? -1 : 1;
}

std::string Number::to_string() const {
  if (exact_) {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), approx_);
  return std::string(buf, res.ptr);
}

Number sqrt(const Number& x) {
  if (x.is_negative()) throw DomainError("square root of a negative constant");
  if (x.exact()) {
    const auto root = [](std::int64_t v) -> std::int64_t {
      auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
      for (std::int64_t c = r > 0 ? r - 1 : 0; c <= r + 1; ++c) {
        if (c * c == v) return c;
      }
      return -1;
    };
    const std::int64_t n = root(x.num());
    const std::int64_t d = root(x.den());
    if (n >= 0 && d > 0) return Number::rational(n, d);
  }
  return Number::from_double(std::sqrt(x.value()));
}

}  // namespace dham
