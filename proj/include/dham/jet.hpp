#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dham/expr.hpp"

namespace dham {

/// Values of all jet-space symbols at one base time. The three time symbols
/// are tied to `t` and `tau`; everything else is free.
class JetPoint {
 public:
  JetPoint(double t, double tau);

  double tau() const noexcept { return tau_; }
  double t() const noexcept { return values_[sym::t.index()]; }

  void set(Symbol s, double value);
  bool has(Symbol s) const { return defined_[s.index()]; }
  /// Throws EvalError when `s` has no value.
  double get(Symbol s) const;

  std::string describe() const;

 private:
  double tau_;
  std::array<double, kSymbolCount> values_{};
  std::array<bool, kSymbolCount> defined_{};
};

double eval(const Expr& e, const JetPoint& j);

struct ScaledValue {
  double value = 0.0;
  /// Largest magnitude seen at any node while evaluating.
  double scale = 0.0;
};

ScaledValue eval_scaled(const Expr& e, const JetPoint& j);

/// Jet with q, p and their derivatives uniform in [-2, 2], tau uniform in
/// [0.3, 1.5], t uniform in [-3, 3]. Deterministic in (seed, index).
JetPoint random_jet(std::uint64_t seed, std::uint64_t index);

/// Per-sample generator used by the sampling checks.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct ZeroCheck {
  bool ok = true;
  double max_abs = 0.0;
  /// Max of |value| / (1 + scale) over the samples.
  double max_rel = 0.0;
  std::optional<JetPoint> witness;
  double witness_value = 0.0;

  explicit operator bool() const { return ok; }
  std::string summary() const;
};

inline constexpr int kDefaultSamples = 100;
inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

using JetSampler = std::function<JetPoint(std::uint64_t index)>;

/// Numerical identity test: |e| <= tol * (1 + scale) at every sample.
ZeroCheck is_zero(const Expr& e, int samples = kDefaultSamples, double tol = kDefaultTol,
                  std::uint64_t seed = kDefaultSeed);

ZeroCheck is_zero_on(const Expr& e, const JetSampler& sampler, int samples,
                     double tol = kDefaultTol);

/// Same check for a family of expressions that must vanish simultaneously.
ZeroCheck all_zero(const std::vector<Expr>& es, int samples = kDefaultSamples,
                   double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed);

}  // namespace dham
