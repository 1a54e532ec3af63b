// Command-line front end: transform, simulate, noether, recurse, compare and
// check-identity over a JSON run configuration.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dham/config.hpp"
#include "dham/noether.hpp"
#include "dham/recursion.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace dham;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerification = 4;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  // simulate
  std::string model_file;
  std::string history_file;
  std::optional<double> tau;
  std::optional<int> steps;
  std::optional<int> horizon;
  std::string method = "hamiltonian";
  std::string derivatives = "fd";
  // check-identity
  bool classical = false;
};

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + what + " file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", what + " file " + path + ": " + e.what());
  }
}

RunConfig build_config(const Options& o) {
  json root;
  if (!o.config.empty()) root = read_json_file(o.config, "config");
  if (!o.model_file.empty()) {
    json m = read_json_file(o.model_file, "model");
    if (m.is_object() && m.contains("kind")) m = json{{"model", m}};
    if (!m.is_object()) throw ConfigError("", "model file must hold a JSON object");
    if (root.is_object()) {
      for (const char* k : {"model", "lagrangian", "hamiltonian"}) root.erase(k);
    }
    for (auto& [key, value] : m.items()) root[key] = value;
  }
  if (!o.history_file.empty()) {
    json h = read_json_file(o.history_file, "history");
    if (h.contains("tau") && !o.tau) root["tau"] = h["tau"];
    h.erase("tau");
    root["history"] = h.contains("history") ? h["history"] : h;
  }
  if (o.tau) root["tau"] = *o.tau;
  if (o.steps) root["solver"]["steps_per_delay"] = *o.steps;
  if (o.horizon) root["solver"]["horizon"] = *o.horizon;
  if (o.seed) root["seed"] = *o.seed;
  if (o.tol) root["tol"] = *o.tol;
  if (root.is_null()) throw ConfigError("", "no configuration given (use --config or --model)");
  return parse_config(root.dump());
}

void emit(const Options& o, const std::string& command, const std::string& ext,
          const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(o.out);
  if (std::filesystem::is_directory(path)) path /= command + "." + ext;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot write " + path.string());
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json check_json(const ZeroCheck& c) {
  json j{{"ok", c.ok}, {"max_abs", c.max_abs}, {"max_rel", c.max_rel}};
  if (!c.ok && c.witness) j["witness"] = c.witness->describe();
  return j;
}

std::string text(const Expr& e) { return to_string(canonical(e)); }

json opt_expr(const std::optional<Expr>& e) { return e ? json(text(*e)) : json(nullptr); }

json alphas_json(const Alphas& a) {
  json j = json::array();
  for (const auto& n : a) j.push_back(n.to_string());
  return j;
}

json drift_json(const DriftReport& d) {
  return {{"max_deviation", d.max_deviation},
          {"time_of_max", d.time_of_max},
          {"reference", d.reference},
          {"nodes", d.nodes}};
}

double t_end_of(const RunConfig& cfg, const History& h) {
  return h.t0 + static_cast<double>(cfg.horizon) * h.tau;
}

int cmd_transform(const Options& o, const RunConfig& cfg) {
  json j;
  j["kind"] = to_string(cfg.kind);
  switch (cfg.kind) {
    case ModelKind::Lagrangian: {
      const LegendreResult r = cfg.alpha1 ? legendre_forward(cfg.lagrangian, *cfg.alpha1)
                                          : legendre_forward(cfg.lagrangian);
      j["H"] = to_string(r.hamiltonian.H);
      j["alphas"] = alphas_json(r.hamiltonian.alphas);
      j["degenerate"] = r.degenerate;
      j["momentum_map"] = r.momentum_map ? json{{"p", to_string(r.momentum_map->p)},
                                                {"pm", to_string(r.momentum_map->pm)}}
                                         : json(nullptr);
      j["inverse_map"] = r.inverse_map ? json{{"qd", to_string(r.inverse_map->qd)},
                                              {"qdm", to_string(r.inverse_map->qdm)}}
                                       : json(nullptr);
      j["merged_relation"] = opt_expr(r.merged_relation);
      j["alphas_alternative"] = alphas_json(alphas_alternative(cfg.lagrangian));
      break;
    }
    case ModelKind::Hamiltonian: {
      const auto q = quadratic_hamiltonian_from(cfg.hamiltonian.H);
      if (!q) {
        throw ConfigError("/model/H",
                          "the reverse transform needs A/2 p^2 + B p pm + C/2 pm^2 + phi(q, qm)");
      }
      const ReverseResult r = legendre_reverse(*q);
      j["L"] = to_string(r.lagrangian.lagrangian());
      j["alpha"] = r.lagrangian.alpha.to_string();
      j["beta"] = r.lagrangian.beta.to_string();
      j["gamma"] = r.lagrangian.gamma.to_string();
      j["phi"] = to_string(r.lagrangian.phi);
      j["alphas"] = alphas_json(r.alphas);
      j["matches_configured_alphas"] = r.alphas == cfg.hamiltonian.alphas;
      j["velocity_map"] = {{"qd", to_string(r.velocity_map.qd)},
                           {"qdm", to_string(r.velocity_map.qdm)}};
      break;
    }
    case ModelKind::ClassicalLagrangian:
      j["H"] = to_string(classical_legendre(cfg.classical_lagrangian).H);
      break;
    case ModelKind::Extended: {
      const ExtendedLegendre e = legendre_extended(cfg.extended, cfg.seed);
      j["H"] = to_string(e.H);
      json a = json::array();
      for (const auto& x : e.alphas) a.push_back(to_string(x));
      j["alphas"] = a;
      j["velocity_map"] = {{"qd", to_string(e.velocity_map.qd)},
                           {"qdm", to_string(e.velocity_map.qdm)}};
      break;
    }
    case ModelKind::Classical:
      throw ConfigError("/model/kind", "transform expects a Lagrangian or a delay Hamiltonian");
  }
  emit(o, "transform", "json", dump(j));
  return 0;
}

Trajectory simulate_trajectory(const RunConfig& cfg, const std::string& method) {
  if (method == "hamiltonian") {
    const History h = hamiltonian_history(cfg);
    return step_hamiltonian(hamiltonian_of(cfg), h, t_end_of(cfg, h), cfg.steps_per_delay);
  }
  if (cfg.kind != ModelKind::Lagrangian) {
    throw ConfigError("/model/kind", "the Elsgolts method needs a quadratic Lagrangian");
  }
  if (!cfg.history) throw ConfigError("/history", "required");
  Trajectory tr = step_elsgolts(cfg.lagrangian, *cfg.history, t_end_of(cfg, *cfg.history),
                                cfg.steps_per_delay);
  const LegendreResult r = cfg.alpha1 ? legendre_forward(cfg.lagrangian, *cfg.alpha1)
                                      : legendre_forward(cfg.lagrangian);
  if (r.momentum_map) {
    if (!canonical(partial(r.momentum_map->p, sym::qdm)).is_zero_const()) {
      throw DomainError("momentum maps with a lagged velocity are not filled in");
    }
    const double k = canonical(partial(r.momentum_map->p, sym::qd)).number().value();
    for (int s = 0; s < tr.segment_count(); ++s) {
      for (int i = 0; i <= tr.nodes_per_delay(); ++i) {
        NodeState& n = tr.at(s, i);
        n.p = k * n.qd;
        n.pd = k * n.qdd;
        n.pdd = k * n.qddd;
      }
    }
  }
  return tr;
}

DerivativeSource derivative_source(const std::string& s) {
  return s == "stored" ? DerivativeSource::Stored : DerivativeSource::FiniteDifference;
}

std::string csv_text(const std::vector<ResidualRow>& rows) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  write_csv(ss, rows);
  return ss.str();
}

int cmd_simulate(const Options& o, const RunConfig& cfg) {
  const Trajectory tr = simulate_trajectory(cfg, o.method);
  const auto rows = residual_report(tr, hamiltonian_of(cfg), derivative_source(o.derivatives));
  emit(o, "simulate", "csv", csv_text(rows));
  const ResidualSummary s = summarize(rows);
  std::cerr << json{{"method", o.method},
                    {"nodes", tr.node_count()},
                    {"max_abs_Rp", s.max_rp},
                    {"max_abs_Rq", s.max_rq},
                    {"max_abs_Rt", s.max_rt}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_noether(const Options& o, const RunConfig& cfg) {
  const DelayHamiltonian h = hamiltonian_of(cfg);
  std::optional<Trajectory> traj;
  std::string trajectory_note;
  if (cfg.history && !cfg.generators.empty()) {
    const History hist = hamiltonian_history(cfg);
    try {
      traj = step_hamiltonian(h, hist, t_end_of(cfg, hist), cfg.steps_per_delay);
    } catch (const DomainError& e) {
      trajectory_note = std::string("no drift: ") + e.what();
    }
  }
  json reports = json::array();
  bool identities_ok = true;
  for (const auto& spec : cfg.generators) {
    const GeneratorReport r = analyze_generator(h, spec.generator, spec.v, spec.w, cfg.seed);
    identities_ok = identities_ok && r.identity.ok;
    json j{{"name", r.name},
           {"classification", to_string(r.invariance.classification)},
           {"omega", text(r.invariance.omega)},
           {"V", opt_expr(r.invariance.v)},
           {"W", opt_expr(r.invariance.w)},
           {"V_fitted", r.invariance.v_fitted},
           {"C", text(r.quantities.c)},
           {"P", text(r.quantities.p_quantity)},
           {"I", opt_expr(r.differential.integral)},
           {"J", opt_expr(r.difference.integral)},
           {"identity_ok", r.identity.ok},
           {"notes", r.notes}};
    if (!r.differential.note.empty()) j["I_note"] = r.differential.note;
    if (!r.difference.note.empty()) j["J_note"] = r.difference.note;
    json drift = json::object();
    if (traj) {
      if (r.differential.integral) {
        drift["I"] = drift_json(dham::drift(*r.differential.integral, *traj, IntegralKind::Differential));
      }
      if (r.difference.integral) {
        drift["J"] = drift_json(dham::drift(*r.difference.integral, *traj, IntegralKind::Difference));
      }
      if (r.invariance.classification != Classification::None &&
          canonical(spec.generator.xi).is_zero_const()) {
        const Expr v = r.invariance.v.value_or(Expr());
        const Expr w = r.invariance.w.value_or(Expr());
        const Expr pw = r.quantities.p_quantity - w;
        drift["conservation_residual"] = drift_json(
            max_along(total_derivative(r.quantities.c - v) - (shift(pw, +1) - pw), *traj));
      }
    }
    j["drift"] = drift;
    reports.push_back(j);
  }
  json out{{"H", to_string(h.H)}, {"alphas", alphas_json(h.alphas)}, {"generators", reports}};
  if (!trajectory_note.empty()) out["trajectory_note"] = trajectory_note;
  emit(o, "noether", "json", dump(out));
  return identities_ok ? 0 : kExitVerification;
}

int cmd_recurse(const Options& o, const RunConfig& cfg) {
  const History hist = hamiltonian_history(cfg);
  const auto [A, B] = recover_constants(hist, cfg.c_mid);
  const SumFormRelation rel{cfg.c_mid, A, B};
  const RecursionResult r = recurse(rel, hist, t_end_of(cfg, hist), cfg.steps_per_delay);
  std::vector<ResidualRow> rows;
  if (cfg.kind == ModelKind::Hamiltonian || cfg.kind == ModelKind::Lagrangian) {
    rows = residual_report(r.trajectory, hamiltonian_of(cfg), DerivativeSource::Stored);
  } else {
    for (std::size_t g = 0; g < r.trajectory.node_count(); ++g) {
      rows.push_back(ResidualRow{r.trajectory.time(g), r.trajectory.node(g)});
    }
  }
  emit(o, "recurse", "csv", csv_text(rows));
  std::cerr << json{{"A", A},
                    {"B", B},
                    {"c_mid", cfg.c_mid},
                    {"relation_residual", relation_residual(r.trajectory, rel)},
                    {"max_seam_jump", r.max_seam_jump},
                    {"warnings", r.warnings}}
                   .dump()
            << "\n";
  return 0;
}

json diff_json(const ComponentDiff& d) { return {{"max", d.max}, {"rms", d.rms}}; }

int cmd_compare(const Options& o, const RunConfig& cfg) {
  const DelayHamiltonian h = hamiltonian_of(cfg);
  const History hist = hamiltonian_history(cfg);
  const auto [A, B] = recover_constants(hist, cfg.c_mid);
  const SumFormRelation rel{cfg.c_mid, A, B};
  std::vector<int> ns = cfg.convergence;
  if (ns.empty()) ns.push_back(cfg.steps_per_delay);
  json runs = json::array();
  double previous = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double t_end = t_end_of(cfg, hist);
    const Trajectory num = step_hamiltonian(h, hist, t_end, ns[i]);
    const RecursionResult rec = recurse(rel, hist, t_end, ns[i]);
    const ComparisonReport c = compare(num, rec.trajectory);
    json run{{"N", ns[i]},
             {"q", diff_json(c.q)},
             {"p", diff_json(c.p)},
             {"qdot", diff_json(c.qd)},
             {"pdot", diff_json(c.pd)}};
    if (i > 0 && c.q.max > 0.0 && previous > 0.0) {
      run["observed_order_q"] =
          std::log(previous / c.q.max) / std::log(static_cast<double>(ns[i]) / ns[i - 1]);
    }
    previous = c.q.max;
    runs.push_back(run);
  }
  emit(o, "compare", "json", dump(json{{"A", A}, {"B", B}, {"c_mid", cfg.c_mid}, {"runs", runs}}));
  return 0;
}

int cmd_check_identity(const Options& o, const RunConfig& cfg) {
  bool ok = true;
  json out;
  json gens = json::array();
  if (o.classical || cfg.kind == ModelKind::Classical || cfg.kind == ModelKind::ClassicalLagrangian) {
    const ClassicalHamiltonian h = cfg.kind == ModelKind::ClassicalLagrangian
                                       ? classical_legendre(cfg.classical_lagrangian)
                                       : cfg.classical;
    if (h.H.is_zero_const() && cfg.kind != ModelKind::Classical &&
        cfg.kind != ModelKind::ClassicalLagrangian) {
      throw ConfigError("/model/kind", "--classical needs a classical model");
    }
    out["H"] = to_string(h.H);
    for (const auto& spec : cfg.generators) {
      const ZeroCheck c = is_zero(classical_identity_defect(h, spec.generator), kDefaultSamples,
                                  cfg.tol, cfg.seed);
      ok = ok && c.ok;
      const ClassicalIntegral ci = classical_first_integral(h, spec.generator, cfg.seed);
      json g{{"name", spec.generator.name},
             {"identity", check_json(c)},
             {"integral", to_string(ci.integral)},
             {"invariant_on_shell", ci.invariant_on_shell}};
      if (ci.invariant_on_shell) {
        const auto states = integrate_rk4(h, cfg.classical_run.start, cfg.classical_run.t_end,
                                          cfg.classical_run.step);
        g["drift"] = classical_drift(ci.integral, states);
      } else {
        g["warning"] = ci.warning;
      }
      gens.push_back(g);
    }
  } else {
    const DelayHamiltonian h = hamiltonian_of(cfg);
    out["H"] = to_string(h.H);
    out["alphas"] = alphas_json(h.alphas);
    for (const auto& spec : cfg.generators) {
      const Generator& g = spec.generator;
      const ZeroCheck id = verify_hamiltonian_identity(h, g, kDefaultSamples, cfg.tol, cfg.seed);
      const ZeroCheck dual =
          is_zero(omega(h, g) - omega_via_tilde(h, g), kDefaultSamples, cfg.tol, cfg.seed);
      const IdentityReport ids =
          variational_derivative_identities(h, g, kDefaultSamples, cfg.tol, cfg.seed);
      ok = ok && id.ok && dual.ok && ids.ok();
      gens.push_back(json{{"name", g.name},
                          {"identity", check_json(id)},
                          {"omega_dual_route", check_json(dual)},
                          {"var_p", check_json(ids.var_p)},
                          {"var_q", check_json(ids.var_q)},
                          {"var_t", check_json(ids.var_t)},
                          {"var_quasi", check_json(ids.var_quasi)}});
    }
  }
  out["generators"] = gens;
  out["ok"] = ok;
  emit(o, "check-identity", "json", dump(out));
  return ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay Hamiltonian toolkit: Legendre transforms, Noether integrals, solvers"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON run configuration");
  app.add_option("--out", o.out, "Output file or directory (default: stdout)");
  app.add_option("--seed", o.seed, "Seed of the sampling checks");
  app.add_option("--tol", o.tol, "Relative tolerance of the identity checks");

  auto* transform = app.add_subcommand("transform", "Legendre transforms of the model");
  auto* simulate = app.add_subcommand("simulate", "Method-of-steps trajectory as CSV");
  simulate->add_option("--model", o.model_file, "Model JSON file");
  simulate->add_option("--history", o.history_file, "History JSON file");
  simulate->add_option("--tau", o.tau, "Delay");
  simulate->add_option("--steps-per-delay", o.steps, "Grid nodes per delay")->check(CLI::Range(8, 1 << 20));
  simulate->add_option("--horizon", o.horizon, "Horizon in delays")->check(CLI::PositiveNumber);
  simulate->add_option("--method", o.method, "hamiltonian or elsgolts")
      ->check(CLI::IsMember({"hamiltonian", "elsgolts"}));
  simulate->add_option("--derivatives", o.derivatives, "Derivatives used for residuals")
      ->check(CLI::IsMember({"fd", "stored"}));
  auto* noether = app.add_subcommand("noether", "Invariance, integrals and drift per generator");
  auto* recurse_cmd = app.add_subcommand("recurse", "Integration-free continuation by first integrals");
  auto* compare_cmd = app.add_subcommand("compare", "Numerical versus recursive trajectories");
  auto* check = app.add_subcommand("check-identity", "Off-shell identity suites");
  check->add_flag("--classical", o.classical, "Use the classical (non-delay) model");
  for (auto* sub : {transform, simulate, noether, recurse_cmd, compare_cmd, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const RunConfig cfg = build_config(o);
    if (transform->parsed()) return cmd_transform(o, cfg);
    if (simulate->parsed()) return cmd_simulate(o, cfg);
    if (noether->parsed()) return cmd_noether(o, cfg);
    if (recurse_cmd->parsed()) return cmd_recurse(o, cfg);
    if (compare_cmd->parsed()) return cmd_compare(o, cfg);
    if (check->parsed()) return cmd_check_identity(o, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
