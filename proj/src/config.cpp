#include "dham/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace dham {

using nlohmann::json;

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Hamiltonian:
      return "hamiltonian";
    case ModelKind::Lagrangian:
      return "lagrangian";
    case ModelKind::Classical:
      return "classical";
    case ModelKind::ClassicalLagrangian:
      return "classical_lagrangian";
    case ModelKind::Extended:
      return "extended";
  }
  return "hamiltonian";
}

Expr parse_field(const std::string& text, const std::string& pointer) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ConfigError(pointer, e.what());
  }
}

namespace {

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

void require_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
}

void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  require_object(j, ptr);
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw ConfigError(child(ptr, k), "unknown key");
  }
}

const json& member(const json& j, const char* key, const std::string& ptr) {
  if (!j.contains(key)) throw ConfigError(child(ptr, key), "required");
  return j.at(key);
}

Expr as_expr(const json& j, const std::string& ptr) {
  if (j.is_string()) return parse_field(j.get<std::string>(), ptr);
  if (j.is_number_integer()) return Expr(Number(j.get<std::int64_t>()));
  if (j.is_number()) return Expr(Number::from_double(j.get<double>()));
  throw ConfigError(ptr, "expected an expression string or a number");
}

Number as_number(const json& j, const std::string& ptr) {
  const Expr e = canonical(as_expr(j, ptr));
  if (!e.is_const()) throw ConfigError(ptr, "expected a constant, got " + to_string(e));
  return e.number();
}

double as_double(const json& j, const std::string& ptr) {
  if (j.is_number()) return j.get<double>();
  return as_number(j, ptr).value();
}

int as_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  return j.get<int>();
}

Expr expr_or_zero(const json& j, const char* key, const std::string& ptr) {
  return j.contains(key) ? as_expr(j.at(key), child(ptr, key)) : Expr();
}

template <typename F>
void wrap_domain(const std::string& ptr, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ConfigError(ptr, e.what());
  }
}

// `implied` is the kind named by a top-level "lagrangian" or "hamiltonian" key.
void parse_model(const json& j, const std::string& ptr, const std::string& implied, RunConfig& cfg) {
  require_object(j, ptr);
  std::string k = implied;
  if (implied.empty() || j.contains("kind")) {
    const json& kind = member(j, "kind", ptr);
    if (!kind.is_string()) throw ConfigError(child(ptr, "kind"), "expected a string");
    k = kind.get<std::string>();
    if (!implied.empty() && k != implied) throw ConfigError(child(ptr, "kind"), "must be " + implied);
  }
  if (k == "hamiltonian") {
    only_keys(j, ptr, {"kind", "H", "alphas"});
    cfg.kind = ModelKind::Hamiltonian;
    cfg.hamiltonian.H = as_expr(member(j, "H", ptr), child(ptr, "H"));
    if (j.contains("alphas")) {
      const json& a = j.at("alphas");
      const std::string ap = child(ptr, "alphas");
      if (!a.is_array() || a.size() != 4) throw ConfigError(ap, "expected four coefficients");
      for (std::size_t i = 0; i < 4; ++i) cfg.hamiltonian.alphas[i] = as_number(a[i], child(ap, i));
    }
    wrap_domain(ptr, [&] { cfg.hamiltonian.validate(); });
  } else if (k == "lagrangian") {
    only_keys(j, ptr, {"kind", "alpha", "beta", "gamma", "phi", "alpha1"});
    cfg.kind = ModelKind::Lagrangian;
    auto& l = cfg.lagrangian;
    l.alpha = as_number(member(j, "alpha", ptr), child(ptr, "alpha"));
    l.beta = as_number(member(j, "beta", ptr), child(ptr, "beta"));
    l.gamma = as_number(member(j, "gamma", ptr), child(ptr, "gamma"));
    l.phi = expr_or_zero(j, "phi", ptr);
    if (j.contains("alpha1")) cfg.alpha1 = as_number(j.at("alpha1"), child(ptr, "alpha1"));
    wrap_domain(ptr, [&] { l.validate(); });
  } else if (k == "classical") {
    only_keys(j, ptr, {"kind", "H"});
    cfg.kind = ModelKind::Classical;
    cfg.classical.H = as_expr(member(j, "H", ptr), child(ptr, "H"));
    wrap_domain(ptr, [&] { cfg.classical.validate(); });
  } else if (k == "classical_lagrangian") {
    only_keys(j, ptr, {"kind", "a", "b", "V"});
    cfg.kind = ModelKind::ClassicalLagrangian;
    auto& l = cfg.classical_lagrangian;
    l.a = as_number(member(j, "a", ptr), child(ptr, "a"));
    l.b = expr_or_zero(j, "b", ptr);
    l.V = expr_or_zero(j, "V", ptr);
    wrap_domain(ptr, [&] { l.validate(); });
  } else if (k == "extended") {
    only_keys(j, ptr, {"kind", "alpha", "beta", "gamma", "lambda", "mu", "phi"});
    cfg.kind = ModelKind::Extended;
    auto& l = cfg.extended;
    l.alpha = as_expr(member(j, "alpha", ptr), child(ptr, "alpha"));
    l.beta = as_expr(member(j, "beta", ptr), child(ptr, "beta"));
    l.gamma = as_expr(member(j, "gamma", ptr), child(ptr, "gamma"));
    l.lambda = expr_or_zero(j, "lambda", ptr);
    l.mu = as_expr(member(j, "mu", ptr), child(ptr, "mu"));
    l.phi = expr_or_zero(j, "phi", ptr);
    wrap_domain(ptr, [&] { l.validate(); });
  } else {
    throw ConfigError(child(ptr, "kind"), "unknown model kind '" + k + "'");
  }
}

GeneratorSpec parse_generator(const json& j, const std::string& ptr) {
  only_keys(j, ptr, {"name", "xi", "eta", "nu", "V", "W"});
  GeneratorSpec s;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ConfigError(child(ptr, "name"), "expected a string");
    s.generator.name = j.at("name").get<std::string>();
  }
  s.generator.xi = expr_or_zero(j, "xi", ptr);
  s.generator.eta = expr_or_zero(j, "eta", ptr);
  s.generator.nu = expr_or_zero(j, "nu", ptr);
  if (j.contains("V")) s.v = as_expr(j.at("V"), child(ptr, "V"));
  if (j.contains("W")) s.w = as_expr(j.at("W"), child(ptr, "W"));
  wrap_domain(ptr, [&] { s.generator.validate(); });
  return s;
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "");
  only_keys(root, "", {"model", "lagrangian", "hamiltonian", "tau", "history", "generators",
                       "solver", "seed", "tol", "recursion", "convergence", "classical",
                       "description"});
  RunConfig cfg;
  const int models = static_cast<int>(root.contains("model")) +
                     static_cast<int>(root.contains("lagrangian")) +
                     static_cast<int>(root.contains("hamiltonian"));
  if (models != 1) throw ConfigError("", "exactly one of model, lagrangian, hamiltonian is required");
  if (root.contains("model")) {
    parse_model(root.at("model"), "/model", "", cfg);
  } else if (root.contains("lagrangian")) {
    parse_model(root.at("lagrangian"), "/lagrangian", "lagrangian", cfg);
  } else {
    parse_model(root.at("hamiltonian"), "/hamiltonian", "hamiltonian", cfg);
  }

  double tau = 1.0;
  if (root.contains("tau")) {
    tau = as_double(root.at("tau"), "/tau");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("/tau", "must be positive");
  }
  if (root.contains("history")) {
    const json& h = root.at("history");
    only_keys(h, "/history", {"t0", "q", "p"});
    History hist;
    hist.tau = tau;
    hist.t0 = h.contains("t0") ? as_double(h.at("t0"), "/history/t0") : 0.0;
    hist.q = as_expr(member(h, "q", "/history"), "/history/q");
    if (h.contains("p")) {
      hist.p = as_expr(h.at("p"), "/history/p");
      cfg.history_has_p = true;
    }
    for (const auto& [key, e] : {std::pair<const char*, const Expr*>{"q", &hist.q}, {"p", &hist.p}}) {
      if (!only_uses(*e, {sym::t})) {
        throw ConfigError(child("/history", key), "a history may depend on t and tau only");
      }
    }
    cfg.history = hist;
  }
  if (root.contains("generators")) {
    const json& gs = root.at("generators");
    if (!gs.is_array()) throw ConfigError("/generators", "expected an array");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      cfg.generators.push_back(parse_generator(gs[i], child("/generators", i)));
    }
  }
  if (root.contains("solver")) {
    const json& s = root.at("solver");
    only_keys(s, "/solver", {"steps_per_delay", "horizon"});
    if (s.contains("steps_per_delay")) {
      cfg.steps_per_delay = as_int(s.at("steps_per_delay"), "/solver/steps_per_delay");
    }
    if (s.contains("horizon")) cfg.horizon = as_int(s.at("horizon"), "/solver/horizon");
  }
  if (cfg.steps_per_delay < 8) throw ConfigError("/solver/steps_per_delay", "must be at least 8");
  if (cfg.horizon < 1) throw ConfigError("/solver/horizon", "must be a positive number of delays");
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw ConfigError("/seed", "expected an unsigned integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  if (root.contains("tol")) {
    cfg.tol = as_double(root.at("tol"), "/tol");
    if (!(cfg.tol > 0.0)) throw ConfigError("/tol", "must be positive");
  }
  if (root.contains("recursion")) {
    const json& r = root.at("recursion");
    only_keys(r, "/recursion", {"c_mid"});
    cfg.c_mid = as_double(member(r, "c_mid", "/recursion"), "/recursion/c_mid");
    if (cfg.c_mid != 0.0 && cfg.c_mid != 2.0) throw ConfigError("/recursion/c_mid", "must be 0 or 2");
  }
  if (root.contains("convergence")) {
    const json& c = root.at("convergence");
    if (!c.is_array()) throw ConfigError("/convergence", "expected an array of node counts");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int n = as_int(c[i], child("/convergence", i));
      if (n < 8) throw ConfigError(child("/convergence", i), "must be at least 8");
      cfg.convergence.push_back(n);
    }
  }
  if (root.contains("classical")) {
    const json& c = root.at("classical");
    only_keys(c, "/classical", {"t0", "q0", "p0", "t_end", "step"});
    auto& run = cfg.classical_run;
    if (c.contains("t0")) run.start.t = as_double(c.at("t0"), "/classical/t0");
    if (c.contains("q0")) run.start.q = as_double(c.at("q0"), "/classical/q0");
    if (c.contains("p0")) run.start.p = as_double(c.at("p0"), "/classical/p0");
    if (c.contains("t_end")) run.t_end = as_double(c.at("t_end"), "/classical/t_end");
    if (c.contains("step")) run.step = as_double(c.at("step"), "/classical/step");
    if (!(run.step > 0.0)) throw ConfigError("/classical/step", "must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

DelayHamiltonian hamiltonian_of(const RunConfig& cfg) {
  switch (cfg.kind) {
    case ModelKind::Hamiltonian:
      return cfg.hamiltonian;
    case ModelKind::Lagrangian:
      return cfg.alpha1 ? legendre_forward(cfg.lagrangian, *cfg.alpha1).hamiltonian
                        : legendre_forward(cfg.lagrangian).hamiltonian;
    default:
      throw ConfigError("/model/kind", std::string("a delay Hamiltonian is not defined for kind ") +
                                           to_string(cfg.kind));
  }
}

History hamiltonian_history(const RunConfig& cfg) {
  if (!cfg.history) throw ConfigError("/history", "required");
  History h = *cfg.history;
  if (cfg.history_has_p) return h;
  if (cfg.kind != ModelKind::Lagrangian) throw ConfigError("/history/p", "required");
  const LegendreResult r =
      cfg.alpha1 ? legendre_forward(cfg.lagrangian, *cfg.alpha1) : legendre_forward(cfg.lagrangian);
  if (!r.momentum_map) {
    throw ConfigError("/history/p", "required for a degenerate Lagrangian");
  }
  // p = k qd with k = beta / alpha1.
  const Expr k = partial(r.momentum_map->p, sym::qd);
  h.p = canonical(k * total_derivative(h.q));
  return h;
}

}  // namespace dham
