#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dham/classical.hpp"
#include "dham/error.hpp"
#include "dham/legendre.hpp"
#include "dham/solver.hpp"

namespace dham {

/// Invalid run configuration. `pointer()` is the JSON pointer of the offending value.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& pointer, const std::string& message)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

enum class ModelKind { Hamiltonian, Lagrangian, Classical, ClassicalLagrangian, Extended };

struct GeneratorSpec {
  Generator generator;
  std::optional<Expr> v;
  std::optional<Expr> w;
};

struct ClassicalRun {
  PhaseState start{0.0, 1.0, 0.0};
  double t_end = 10.0;
  double step = 1e-3;
};

struct RunConfig {
  ModelKind kind = ModelKind::Hamiltonian;
  DelayHamiltonian hamiltonian;
  QuadraticLagrangian lagrangian;
  std::optional<Number> alpha1;
  ClassicalHamiltonian classical;
  ClassicalLagrangian classical_lagrangian;
  ExtendedLagrangian extended;

  std::optional<History> history;
  bool history_has_p = false;
  std::vector<GeneratorSpec> generators;
  int steps_per_delay = 128;
  /// Horizon in units of tau.
  int horizon = 10;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  double c_mid = 0.0;
  std::vector<int> convergence;
  ClassicalRun classical_run;
};

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Expression-valued field, reported against `pointer` on failure.
Expr parse_field(const std::string& text, const std::string& pointer);

/// The delay Hamiltonian of a Hamiltonian or quadratic Lagrangian config.
DelayHamiltonian hamiltonian_of(const RunConfig& cfg);

/// History for the canonical equations: p from the config, or from the
/// momentum map of a nondegenerate Lagrangian.
History hamiltonian_history(const RunConfig& cfg);

const char* to_string(ModelKind k);

}  // namespace dham
