#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "docergo/brickwork.hpp"
#include "docergo/digraph.hpp"
#include "docergo/doc_channel.hpp"
#include "docergo/lambda_map.hpp"
#include "docergo/ldoi_gates.hpp"
#include "docergo/stochastic.hpp"

namespace docergo::io {

using nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

inline json to_json(const std::vector<Complex>& values) {
  json out = json::array();
  for (const auto& z : values) out.push_back(to_json(z));
  return out;
}

/// {"d": n, "entries": [[[re, im], ...], ...]}, row-major.
inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"d", m.rows()}, {"entries", std::move(rows)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix JSON needs an \"entries\" field");
  const auto& rows = j.at("entries");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"entries\" must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.contains("d") && (!j["d"].is_number_integer() || j["d"].get<Eigen::Index>() != n))
    throw ParseError("\"d\" does not match the number of rows");
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline json to_json(const TripleABC& t) {
  return {{"d", t.dim()}, {"A", to_json(t.A())}, {"B", to_json(t.B())}, {"C", to_json(t.C())}};
}

inline TripleABC triple_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("C"))
    throw ParseError("triple JSON needs \"A\", \"B\" and \"C\"");
  TripleABC t(matrix_from_json(j["A"]), matrix_from_json(j["B"]), matrix_from_json(j["C"]));
  if (j.contains("d") && j["d"].get<int>() != t.dim()) throw ParseError("\"d\" does not match the matrices");
  return t;
}

/// {"n": n, "edges": [[i, j], ...]}, 1-indexed.
inline json to_json(const Digraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return {{"n", g.size()}, {"edges", std::move(edges)}};
}

inline Digraph digraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw ParseError("digraph JSON needs n and edges");
  Digraph g(j["n"].get<int>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [i, j]");
    const int u = e[0].get<int>() - 1, v = e[1].get<int>() - 1;
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size()) throw ParseError("edge endpoint out of range");
    g.add_edge(u, v);
  }
  return g;
}

inline json to_json(const StochasticReport& r) {
  json out = {{"ergodic", r.ergodic},
              {"mixing", r.mixing},
              {"irreducible", r.irreducible},
              {"primitive", r.primitive},
              {"scrambling", r.scrambling},
              {"unit_multiplicity", r.unit_multiplicity},
              {"peripheral_count", r.peripheral_count},
              {"closed_class_count", r.closed_class_count},
              {"eigenvalues", to_json(r.eigenvalues)}};
  if (r.stationary) {
    json pi = json::array();
    for (Eigen::Index i = 0; i < r.stationary->size(); ++i) pi.push_back((*r.stationary)(i));
    out["stationary"] = std::move(pi);
  } else {
    out["stationary"] = nullptr;
  }
  return out;
}

inline json to_json(const ChannelReport& r) {
  json pairs = json::array();
  for (const auto& lp : r.lambda_pm)
    pairs.push_back({{"i", lp.i + 1}, {"j", lp.j + 1}, {"plus", to_json(lp.plus)}, {"minus", to_json(lp.minus)}});
  json out = {{"ergodic", r.ergodic},
              {"mixing", r.mixing},
              {"irreducible", r.irreducible},
              {"primitive", r.primitive},
              {"peripheral_count", r.peripheral_count},
              {"constant_mode_count", r.constant_mode_count},
              {"nondecaying_mode_count", r.nondecaying_mode_count()},
              {"lambda_pm", std::move(pairs)},
              {"eigenvalues", to_json(r.eigenvalues)},
              {"route", r.route}};
  out["stationary_state"] = r.stationary_state ? to_json(*r.stationary_state) : json(nullptr);
  return out;
}

inline json to_json(const CptpDiagnostics& c) {
  return {{"cptp", c.ok},
          {"failed", c.failed},
          {"detail", c.detail},
          {"b_min_eigenvalue", c.b_min_eigenvalue},
          {"c_hermiticity_residual", c.c_hermiticity_residual},
          {"pair_slack", c.pair_slack}};
}

inline json to_json(const GateCertificates& c) {
  return {{"unitary", c.unitary},
          {"dual_unitary", c.dual_unitary},
          {"perfect", c.perfect},
          {"unitary_residual", c.unitary_residual},
          {"realigned_residual", c.realigned_residual},
          {"transposed_residual", c.transposed_residual}};
}

inline json to_json(const LdoiGate& g) {
  json out = {{"d", g.triple.dim()}, {"triple", to_json(g.triple)}, {"certificates", to_json(g.certificates)}};
  out["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  return out;
}

inline json to_json(const CircuitVerdict& v) {
  json out = {{"non_interacting", v.non_interacting},
              {"ergodic", v.ergodic},
              {"mixing", v.mixing},
              {"bernoulli", v.bernoulli},
              {"constant_modes", v.constant_modes},
              {"nondecaying_modes", v.nondecaying_modes},
              {"peripheral", to_json(v.peripheral)},
              {"channel_report", to_json(v.channel_report)}};
  out["lambda_triple"] = v.lambda_triple ? to_json(*v.lambda_triple) : json(nullptr);
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Simulation input: chain parameters, gate and observables.
struct SimulationInput {
  ChainConfig chain;
  ComplexMatrix a;
  ComplexMatrix b;
  int origin = 0;
};

/// {"d", "L", "t_max", "origin"?, "A", "B", and one of
///  "gate" (Matrix JSON), "gate_triple" (Triple JSON) or "gate_file" (path
///  relative to `base_dir` holding either form or a bare Triple JSON)}.
inline SimulationInput simulation_from_json(const json& j, const std::string& base_dir = ".") {
  try {
    SimulationInput in;
    in.chain.d = j.at("d").get<int>();
    in.chain.L = j.at("L").get<int>();
    in.chain.t_max = j.at("t_max").get<int>();
    in.origin = j.value("origin", 0);
    in.a = matrix_from_json(j.at("A"));
    in.b = matrix_from_json(j.at("B"));

    json gate_spec = j;
    if (j.contains("gate_file")) gate_spec = read_json_file(base_dir + "/" + j["gate_file"].get<std::string>());
    if (gate_spec.contains("gate")) {
      in.chain.gate = BipartiteMatrix::from_matrix(matrix_from_json(gate_spec["gate"]));
    } else if (gate_spec.contains("gate_triple")) {
      in.chain.gate = ldoi_matrix(triple_from_json(gate_spec["gate_triple"]));
    } else if (gate_spec.contains("triple")) {
      in.chain.gate = ldoi_matrix(triple_from_json(gate_spec["triple"]));
    } else if (j.contains("gate_file") && gate_spec.contains("A")) {
      in.chain.gate = ldoi_matrix(triple_from_json(gate_spec));
    } else {
      throw ParseError("simulation config needs gate, gate_triple or gate_file");
    }
    return in;
  } catch (const json::exception& e) {
    throw ParseError(std::string("simulation config: ") + e.what());
  }
}

inline json to_json(const ChainConfig& c) {
  return {{"d", c.d}, {"L", c.L}, {"t_max", c.t_max}, {"gate", to_json(c.gate.matrix())}};
}

}  // namespace docergo::io
