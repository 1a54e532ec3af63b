#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "dham/config.hpp"
#include "dham/legendre.hpp"
#include "dham/noether.hpp"
#include "dham/recursion.hpp"
#include "dham/solver.hpp"

namespace py = pybind11;
using namespace dham;

namespace {

Number constant(const std::string& text) {
  const Expr e = canonical(parse(text));
  if (!e.is_const()) throw DomainError("expected a constant, got " + text);
  return e.number();
}

DelayHamiltonian hamiltonian(const std::string& H, const std::array<std::string, 4>& alphas) {
  DelayHamiltonian h{parse(H)};
  for (std::size_t i = 0; i < 4; ++i) h.alphas[i] = constant(alphas[i]);
  h.validate();
  return h;
}

Generator generator(const std::string& xi, const std::string& eta, const std::string& nu) {
  Generator g{parse(xi), parse(eta), parse(nu), ""};
  g.validate();
  return g;
}

std::vector<std::string> alpha_strings(const Alphas& a) {
  std::vector<std::string> out;
  for (const Number& x : a) out.push_back(x.to_string());
  return out;
}

py::dict trajectory_dict(const Trajectory& traj) {
  std::vector<double> t, q, p;
  for (std::size_t g = 0; g < traj.node_count(); ++g) {
    t.push_back(traj.time(g));
    q.push_back(traj.node(g).q);
    p.push_back(traj.node(g).p);
  }
  py::dict d;
  d["t"] = t;
  d["q"] = q;
  d["p"] = p;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Delay Hamiltonian toolkit";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  m.def("canonical", [](const std::string& s) { return to_string(canonical(parse(s))); },
        "Parse and print in canonical form.");
  m.def("is_zero",
        [](const std::string& s, int samples, double tol, std::uint64_t seed) {
          return is_zero(parse(s), samples, tol, seed).ok;
        },
        py::arg("expr"), py::arg("samples") = kDefaultSamples, py::arg("tol") = kDefaultTol,
        py::arg("seed") = kDefaultSeed);
  m.def("total_derivative", [](const std::string& s) { return to_string(total_derivative(parse(s))); });

  m.def("legendre",
        [](const std::string& alpha, const std::string& beta, const std::string& gamma,
           const std::string& phi, const std::string& alpha1) {
          QuadraticLagrangian l{constant(alpha), constant(beta), constant(gamma), parse(phi)};
          l.validate();
          const LegendreResult r = legendre_forward(l, constant(alpha1));
          py::dict d;
          d["H"] = to_string(canonical(r.hamiltonian.H));
          d["alphas"] = alpha_strings(r.hamiltonian.alphas);
          d["degenerate"] = r.degenerate;
          return d;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("phi") = "0",
        py::arg("alpha1") = "1");

  m.def("verify_identity",
        [](const std::string& H, const std::array<std::string, 4>& alphas, const std::string& xi,
           const std::string& eta, const std::string& nu, int samples, double tol, std::uint64_t seed) {
          const ZeroCheck c =
              verify_hamiltonian_identity(hamiltonian(H, alphas), generator(xi, eta, nu), samples, tol, seed);
          py::dict d;
          d["ok"] = c.ok;
          d["max_rel"] = c.max_rel;
          return d;
        },
        py::arg("H"), py::arg("alphas"), py::arg("xi"), py::arg("eta"), py::arg("nu"),
        py::arg("samples") = kDefaultSamples, py::arg("tol") = kDefaultTol, py::arg("seed") = kDefaultSeed);

  m.def("analyze",
        [](const std::string& H, const std::array<std::string, 4>& alphas, const std::string& xi,
           const std::string& eta, const std::string& nu) {
          const GeneratorReport r = analyze_generator(hamiltonian(H, alphas), generator(xi, eta, nu));
          py::dict d;
          d["classification"] = std::string(to_string(r.invariance.classification));
          d["omega"] = to_string(canonical(r.invariance.omega));
          d["C"] = to_string(canonical(r.quantities.c));
          d["P"] = to_string(canonical(r.quantities.p_quantity));
          d["identity_ok"] = r.identity.ok;
          d["I"] = r.differential.integral ? py::object(py::str(to_string(canonical(*r.differential.integral))))
                                           : py::object(py::none());
          d["J"] = r.difference.integral ? py::object(py::str(to_string(canonical(*r.difference.integral))))
                                         : py::object(py::none());
          return d;
        },
        py::arg("H"), py::arg("alphas"), py::arg("xi"), py::arg("eta"), py::arg("nu"));

  m.def("simulate",
        [](const std::string& config_path, int steps_per_delay) {
          const RunConfig cfg = load_config(config_path);
          const History hist = hamiltonian_history(cfg);
          const int n = steps_per_delay > 0 ? steps_per_delay : cfg.steps_per_delay;
          const Trajectory traj =
              step_hamiltonian(hamiltonian_of(cfg), hist, hist.t0 + cfg.horizon * hist.tau, n);
          return trajectory_dict(traj);
        },
        py::arg("config"), py::arg("steps_per_delay") = 0);

  m.def("recurse",
        [](const std::string& config_path, int steps_per_delay) {
          const RunConfig cfg = load_config(config_path);
          const History hist = hamiltonian_history(cfg);
          const auto [A, B] = recover_constants(hist, cfg.c_mid);
          const int n = steps_per_delay > 0 ? steps_per_delay : cfg.steps_per_delay;
          const RecursionResult r =
              recurse({cfg.c_mid, A, B}, hist, hist.t0 + cfg.horizon * hist.tau, n);
          py::dict d = trajectory_dict(r.trajectory);
          d["A"] = A;
          d["B"] = B;
          return d;
        },
        py::arg("config"), py::arg("steps_per_delay") = 0);
}
