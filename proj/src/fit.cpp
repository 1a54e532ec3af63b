#include "dham/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace dham {
namespace {

std::vector<Expr> time_factors() {
  const Expr t(sym::t), tm(sym::tm);
  return {Expr(1), sin(t), cos(t), sin(tm), cos(tm), t};
}

std::vector<Expr> monomials(const std::vector<Symbol>& vars) {
  std::vector<Expr> out;
  for (const auto& v : vars) out.emplace_back(v);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i; j < vars.size(); ++j) out.push_back(Expr(vars[i]) * Expr(vars[j]));
  }
  return out;
}

std::vector<Expr> with_time_factors(const std::vector<Expr>& monos) {
  std::vector<Expr> out;
  for (const auto& f : time_factors()) {
    for (const auto& m : monos) out.push_back(f * m);
  }
  return out;
}

}  // namespace

std::vector<Expr> divergence_dictionary() {
  return with_time_factors(monomials({sym::q, sym::qm, sym::qp, sym::p, sym::pm, sym::pp}));
}

std::vector<Expr> difference_dictionary() {
  return with_time_factors(
      monomials({sym::q, sym::qm, sym::p, sym::pm, sym::qd, sym::qdm, sym::pd, sym::pdm}));
}

Number snap_rational(double value, int max_den, double tol) {
  for (int den = 1; den <= max_den; ++den) {
    const double num = std::round(value * den);
    if (std::abs(num / den - value) <= tol * std::max(1.0, std::abs(value))) {
      return Number::rational(static_cast<std::int64_t>(num), den);
    }
  }
  return Number::from_double(value);
}

FitResult fit_template(const std::vector<Expr>& basis, const std::function<Expr(const Expr&)>& op,
                       const Expr& target, const JetSampler& fit_jets,
                       const JetSampler& check_jets, double tol) {
  const auto cols = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index rows = 2 * cols + 40;
  std::vector<Expr> images;
  images.reserve(basis.size());
  for (const auto& m : basis) images.push_back(op(m));

  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const JetPoint j = fit_jets(static_cast<std::uint64_t>(r));
    for (Eigen::Index c = 0; c < cols; ++c) A(r, c) = eval(images[static_cast<std::size_t>(c)], j);
    b(r) = eval(target, j);
  }
  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);

  FitResult out;
  out.lsq_residual = (A * x - b).norm() / std::sqrt(static_cast<double>(rows));

  const auto build = [&](bool snap) {
    Expr e;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double v = x(c);
      if (std::abs(v) < 1e-9) continue;
      e += Expr(snap ? snap_rational(v) : Number::from_double(v)) * basis[static_cast<std::size_t>(c)];
    }
    return e;
  };
  for (bool snap : {true, false}) {
    Expr candidate = build(snap);
    ZeroCheck check = is_zero_on(target - op(candidate), check_jets, kDefaultSamples, tol);
    if (check.ok) {
      out.found = true;
      out.expr = std::move(candidate);
      out.check = std::move(check);
      return out;
    }
    if (snap) out.check = std::move(check);
  }
  return out;
}

}  // namespace dham
