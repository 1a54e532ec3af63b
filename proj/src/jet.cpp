#include "dham/jet.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dham/error.hpp"

namespace dham {

JetPoint::JetPoint(double t, double tau) : tau_(tau) {
  if (!(tau > 0.0)) throw DomainError("delay must be positive");
  values_[sym::tm.index()] = t - tau;
  values_[sym::t.index()] = t;
  values_[sym::tp.index()] = t + tau;
  defined_[sym::tm.index()] = defined_[sym::t.index()] = defined_[sym::tp.index()] = true;
}

void JetPoint::set(Symbol s, double value) {
  if (s.base == Base::T) throw DomainError("time symbols follow from t and tau");
  values_[s.index()] = value;
  defined_[s.index()] = true;
}

double JetPoint::get(Symbol s) const {
  if (!defined_[s.index()]) throw EvalError("no value for symbol '" + s.name() + "'");
  return values_[s.index()];
}

std::string JetPoint::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "tau=" << tau_;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (defined_[i]) os << ' ' << symbol_at(i).name() << '=' << values_[i];
  }
  return os.str();
}

namespace {

double eval_node(const Expr& e, const JetPoint& j, double& scale) {
  double v = 0.0;
  switch (e.kind()) {
    case Kind::Const: v = e.number().value(); break;
    case Kind::Sym: v = j.get(e.symbol()); break;
    case Kind::Tau: v = j.tau(); break;
    case Kind::Add: v = eval_node(e.lhs(), j, scale) + eval_node(e.rhs(), j, scale); break;
    case Kind::Sub: v = eval_node(e.lhs(), j, scale) - eval_node(e.rhs(), j, scale); break;
    case Kind::Mul: v = eval_node(e.lhs(), j, scale) * eval_node(e.rhs(), j, scale); break;
    case Kind::Div: {
      const double a = eval_node(e.lhs(), j, scale);
      const double b = eval_node(e.rhs(), j, scale);
      if (b == 0.0) throw EvalError("division by zero in '" + to_string(e) + "'");
      v = a / b;
      break;
    }
    case Kind::Neg: v = -eval_node(e.lhs(), j, scale); break;
    case Kind::Pow: {
      const double b = eval_node(e.lhs(), j, scale);
      if (b == 0.0 && e.exponent() < 0) {
        throw EvalError("zero to a negative power in '" + to_string(e) + "'");
      }
      v = std::pow(b, e.exponent());
      break;
    }
    case Kind::Sin: v = std::sin(eval_node(e.lhs(), j, scale)); break;
    case Kind::Cos: v = std::cos(eval_node(e.lhs(), j, scale)); break;
    case Kind::Exp: v = std::exp(eval_node(e.lhs(), j, scale)); break;
  }
  scale = std::max(scale, std::abs(v));
  return v;
}

// Uniform double in [lo, hi) from the top 53 bits.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

double eval(const Expr& e, const JetPoint& j) {
  double scale = 0.0;
  return eval_node(e, j, scale);
}

ScaledValue eval_scaled(const Expr& e, const JetPoint& j) {
  ScaledValue out;
  out.value = eval_node(e, j, out.scale);
  return out;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

JetPoint random_jet(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(sample_seed(seed, index));
  const double tau = uniform(rng, 0.3, 1.5);
  const double t = uniform(rng, -3.0, 3.0);
  JetPoint j(t, tau);
  for (std::size_t i = 3; i < kSymbolCount; ++i) j.set(symbol_at(i), uniform(rng, -2.0, 2.0));
  return j;
}

std::string ZeroCheck::summary() const {
  std::ostringstream os;
  os.precision(3);
  os << (ok ? "ok" : "FAILED") << " max_abs=" << max_abs << " max_rel=" << max_rel;
  if (witness) {
    os.precision(17);
    os << " value=" << witness_value << " at {" << witness->describe() << "}";
  }
  return os.str();
}

ZeroCheck is_zero_on(const Expr& e, const JetSampler& sampler, int samples, double tol) {
  if (samples < 1) throw DomainError("at least one sample is required");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  ZeroCheck r;
  for (int i = 0; i < samples; ++i) {
    const JetPoint j = sampler(static_cast<std::uint64_t>(i));
    ScaledValue v;
    try {
      v = eval_scaled(e, j);
    } catch (const EvalError& err) {
      throw EvalError(std::string(err.what()) + " (sample " + std::to_string(i) + ": " +
                      j.describe() + ")");
    }
    const double a = std::abs(v.value);
    const double rel = a / (1.0 + v.scale);
    r.max_abs = std::max(r.max_abs, a);
    r.max_rel = std::max(r.max_rel, rel);
    if (!(rel <= tol) && r.ok) {
      r.ok = false;
      r.witness = j;
      r.witness_value = v.value;
    }
  }
  return r;
}

ZeroCheck is_zero(const Expr& e, int samples, double tol, std::uint64_t seed) {
  return is_zero_on(e, [seed](std::uint64_t i) { return random_jet(seed, i); }, samples, tol);
}

ZeroCheck all_zero(const std::vector<Expr>& es, int samples, double tol, std::uint64_t seed) {
  ZeroCheck total;
  for (const auto& e : es) {
    ZeroCheck r = is_zero(e, samples, tol, seed);
    total.max_abs = std::max(total.max_abs, r.max_abs);
    total.max_rel = std::max(total.max_rel, r.max_rel);
    if (!r.ok && total.ok) {
      total.ok = false;
      total.witness = r.witness;
      total.witness_value = r.witness_value;
    }
  }
  return total;
}

}  // namespace dham
