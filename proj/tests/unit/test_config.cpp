#include <string>

#include "doctest.h"
#include "dham/config.hpp"

using namespace dham;

namespace {

std::string pointer_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("top-level Lagrangian and nested model forms agree") {
  const RunConfig a = parse_config(R"j({
    "lagrangian": {"alpha": 0, "beta": 1, "gamma": 0, "phi": "q*qm"},
    "tau": 1, "history": {"q": "sin(t)", "p": "cos(t)"}})j");
  const RunConfig b = parse_config(R"j({
    "model": {"kind": "lagrangian", "alpha": 0, "beta": 1, "gamma": 0, "phi": "q*qm"},
    "tau": 1, "history": {"q": "sin(t)", "p": "cos(t)"}})j");
  CHECK(a.kind == ModelKind::Lagrangian);
  CHECK(b.kind == ModelKind::Lagrangian);
  CHECK(is_zero(hamiltonian_of(a).H - hamiltonian_of(b).H).ok);
  CHECK(is_zero(hamiltonian_of(a).H - parse("p*pm + q*qm")).ok);
  REQUIRE(a.history.has_value());
  CHECK(a.history_has_p);
  CHECK(a.history->tau == 1.0);
}

TEST_CASE("Hamiltonian config with alphas and generators") {
  const RunConfig c = parse_config(R"j({
    "hamiltonian": {"H": "p*pm + q*qm", "alphas": [1, 0, 0, "1"]},
    "tau": 0.5,
    "generators": [{"name": "X1", "xi": "0", "eta": "sin(t)", "nu": "cos(t)", "V": "q*qm"}],
    "solver": {"steps_per_delay": 32, "horizon": 4},
    "recursion": {"c_mid": 2},
    "convergence": [16, 32],
    "seed": 7, "tol": 1e-8})j");
  CHECK(c.kind == ModelKind::Hamiltonian);
  CHECK(c.hamiltonian.alphas[3] == Number(1));
  REQUIRE(c.generators.size() == 1);
  CHECK(c.generators[0].generator.name == "X1");
  CHECK(c.generators[0].v.has_value());
  CHECK_FALSE(c.generators[0].w.has_value());
  CHECK(c.steps_per_delay == 32);
  CHECK(c.horizon == 4);
  CHECK(c.c_mid == 2.0);
  CHECK(c.convergence == std::vector<int>{16, 32});
  CHECK(c.seed == 7);
  CHECK(c.tol == 1e-8);
}

TEST_CASE("momentum history from a nondegenerate Lagrangian") {
  const RunConfig c = parse_config(R"j({
    "lagrangian": {"alpha": 0, "beta": 1, "gamma": 0, "phi": "q*qm"},
    "tau": 1, "history": {"q": "sin(t)"}})j");
  CHECK_FALSE(c.history_has_p);
  const History h = hamiltonian_history(c);
  CHECK(is_zero(h.p - parse("cos(t)")).ok);

  const RunConfig d = parse_config(R"j({
    "lagrangian": {"alpha": 1, "beta": 1, "gamma": 1, "phi": "(q + qm)^2/2"},
    "tau": 1, "history": {"q": "sin(t)"}})j");
  CHECK_THROWS_AS(hamiltonian_history(d), ConfigError);
}

TEST_CASE("errors name the offending value") {
  CHECK(pointer_of(R"j({"model": {"kind": "quartic"}, "tau": 1})j") == "/model/kind");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*"}, "tau": 1})j") == "/hamiltonian/H");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm + qdot"}, "tau": 1})j") == "/hamiltonian/H");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm", "alphas": [1, 0]}, "tau": 1})j") ==
        "/hamiltonian/alphas");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": -1})j") == "/tau");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": 1, "colour": 3})j") == "/colour");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm", "extra": 1}, "tau": 1})j") ==
        "/hamiltonian/extra");
  CHECK(pointer_of(R"j({"tau": 1})j") == "");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "lagrangian": {}, "tau": 1})j") == "");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": 1, "recursion": {"c_mid": 1}})j") ==
        "/recursion/c_mid");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": 1, "history": {"q": "q"}})j") ==
        "/history/q");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": 1, "convergence": [32, 4]})j") ==
        "/convergence/1");
  CHECK(pointer_of(R"j({"hamiltonian": {"H": "p*pm"}, "tau": 1,
                       "generators": [{"xi": "0", "eta": "qdd", "nu": "0"}]})j")
            .rfind("/generators/0", 0) == 0);
  CHECK(pointer_of("{not json") == "");
  CHECK(pointer_of("[]") == "");
}

TEST_CASE("top-level kind must agree with the model key") {
  CHECK(pointer_of(R"j({"lagrangian": {"kind": "hamiltonian", "H": "p"}, "tau": 1})j") ==
        "/lagrangian/kind");
}

TEST_CASE("classical and extended kinds") {
  const RunConfig c = parse_config(R"j({
    "model": {"kind": "classical", "H": "(p^2 + q^2)/2"},
    "classical": {"t0": 0, "q0": 1, "p0": 0, "t_end": 5, "step": 0.01}})j");
  CHECK(c.kind == ModelKind::Classical);
  CHECK(c.classical_run.t_end == 5.0);
  CHECK_THROWS_AS(hamiltonian_of(c), ConfigError);

  const RunConfig e = parse_config(R"j({
    "model": {"kind": "extended", "alpha": 1, "beta": 1, "gamma": 0, "lambda": "q",
              "mu": 2, "phi": "q*qm"}, "tau": 1})j");
  CHECK(e.kind == ModelKind::Extended);
  CHECK(is_zero(e.extended.lambda - parse("q")).ok);
}
