#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "docergo/json_io.hpp"

namespace docergo::cli {

enum ExitCode : int { ok = 0, parse_error = 1, precondition_error = 2, size_error = 3 };

struct CommandResult {
  int code = ok;
  std::string out;  // machine output
  std::string err;  // diagnostics
};

struct Options {
  std::uint64_t seed = 0;
  Tolerances tol;
  std::string format = "json";
};

/// Runs `body` and maps library errors onto the exit-code contract.
inline CommandResult guarded(const std::function<std::string()>& body) {
  CommandResult r;
  try {
    r.out = body();
  } catch (const SizeError& e) {
    r = {size_error, "", std::string("size cap: ") + e.what() + "\n"};
  } catch (const NotStochastic& e) {
    r = {precondition_error, "", std::string("not stochastic: ") + e.what() + "\n"};
  } catch (const PreconditionError& e) {
    r = {precondition_error, "", std::string("precondition: ") + e.what() + "\n"};
  } catch (const io::json::exception& e) {
    r = {parse_error, "", std::string("parse: ") + e.what() + "\n"};
  } catch (const Error& e) {
    r = {parse_error, "", std::string("invalid input: ") + e.what() + "\n"};
  }
  return r;
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

inline CommandResult classify_stochastic_cmd(const std::string& path, const Options& opt = {}) {
  return guarded([&] {
    const StochasticMatrix a(io::matrix_from_json(io::read_json_file(path)), opt.tol.zero);
    return dump(io::to_json(classify_stochastic(a, opt.tol)));
  });
}

inline CommandResult classify_doc_cmd(const std::string& path, const Options& opt = {}) {
  return guarded([&] {
    const DocChannel ch(io::triple_from_json(io::read_json_file(path)));
    auto j = io::to_json(classify(ch, opt.tol));
    j["certificate"] = io::to_json(ch.certificate());
    return dump(j);
  });
}

inline CommandResult check_gate_cmd(const std::string& path, const Options& = {}) {
  return guarded([&] {
    const auto t = io::triple_from_json(io::read_json_file(path));
    auto j = io::to_json(assemble(t));
    j["structural"] = {{"unitary", is_unitary_ldoi(t)}, {"dual_unitary", is_dual_unitary_ldoi(t)}};
    return dump(j);
  });
}

inline CommandResult lambda_cmd(const std::string& path, const Options& opt = {}) {
  return guarded([&] {
    const auto t = io::triple_from_json(io::read_json_file(path));
    const auto verdict = classify_circuit(ldoi_matrix(t), opt.tol);
    return dump({{"lambda_plus", io::to_json(lambda_plus_closed_form(t))}, {"verdict", io::to_json(verdict)}});
  });
}

inline CommandResult simulate_cmd(const std::string& path, const Options& opt = {}) {
  return guarded([&] {
    const auto base = std::filesystem::path(path).parent_path().string();
    const auto in = io::simulation_from_json(io::read_json_file(path), base.empty() ? "." : base);
    const auto table = correlations(in.chain, in.a, in.b, in.origin);
    if (opt.format == "csv") return table.to_csv();
    io::json rows = io::json::array();
    for (const auto& [key, value] : table.values) {
      rows.push_back({{"x", key.first},
                      {"t", key.second},
                      {"raw", io::to_json(value)},
                      {"normalized", io::to_json(table.normalized(key.first, key.second))}});
    }
    return dump({{"d", table.d},
                 {"L", table.L},
                 {"origin", table.origin},
                 {"site_labels", {{"first", -table.L + 1}, {"last", table.L}}},
                 {"values", std::move(rows)}});
  });
}

/// Gate families for sweeps: "projection_dual" (rank-`rank` Haar projection),
/// "ldui_dual" (random phase matrix).
inline TripleABC family_instance(const std::string& family, int d, std::uint64_t seed, int rank = 1) {
  Rng rng(seed);
  if (family == "projection_dual") return gen_projection_dual(haar_projection(d, rank, rng), seed ^ 0x9e3779b97f4a7c15ULL);
  if (family == "ldui_dual") return gen_ldui_dual(random_phase_matrix(d, rng));
  throw PreconditionError("unknown family '" + family + "' (expected projection_dual or ldui_dual)");
}

inline CommandResult sweep_cmd(const std::string& family, int seeds, int d, const Options& opt = {}, int rank = 1) {
  return guarded([&] {
    if (seeds < 1 || d < 1) throw PreconditionError("sweep needs seeds >= 1 and d >= 1");
    io::json counts = {{"non_interacting", 0}, {"ergodic", 0},  {"mixing", 0},
                       {"irreducible", 0},     {"primitive", 0}, {"bernoulli", 0}};
    io::json not_primitive = io::json::array();
    for (int k = 0; k < seeds; ++k) {
      const std::uint64_t s = opt.seed + static_cast<std::uint64_t>(k);
      const auto v = classify_circuit(ldoi_matrix(family_instance(family, d, s, rank)), opt.tol);
      counts["non_interacting"] = counts["non_interacting"].get<int>() + v.non_interacting;
      counts["ergodic"] = counts["ergodic"].get<int>() + v.ergodic;
      counts["mixing"] = counts["mixing"].get<int>() + v.mixing;
      counts["irreducible"] = counts["irreducible"].get<int>() + v.channel_report.irreducible;
      counts["primitive"] = counts["primitive"].get<int>() + v.channel_report.primitive;
      counts["bernoulli"] = counts["bernoulli"].get<int>() + v.bernoulli;
      if (!v.channel_report.primitive) not_primitive.push_back(s);
    }
    return dump({{"family", family},
                 {"d", d},
                 {"rank", rank},
                 {"seeds", seeds},
                 {"first_seed", opt.seed},
                 {"counts", std::move(counts)},
                 {"not_primitive_seeds", std::move(not_primitive)}});
  });
}

}  // namespace docergo::cli
