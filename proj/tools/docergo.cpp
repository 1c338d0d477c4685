// docergo: command-line front-end for the docergo library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/sha.h>

#include "docergo/cli.hpp"

namespace {

constexpr const char* tool_version = "0.1.0";

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  std::string hex;
  char buf[3];
  for (unsigned char c : digest) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  return hex;
}

struct Run {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json parameters = nlohmann::json::object();
};

int finish(const Run& run, const docergo::cli::CommandResult& r, const docergo::cli::Options& opt,
           const std::string& out_dir) {
  std::cerr << r.err;
  if (r.code != docergo::cli::ok) return r.code;
  if (out_dir.empty()) {
    std::cout << r.out;
    return r.code;
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string name = run.command + (opt.format == "csv" ? ".csv" : ".json");
  std::ofstream(fs::path(out_dir) / name, std::ios::binary) << r.out;
  const nlohmann::json manifest = {{"command", run.command},
                                   {"inputs", run.inputs},
                                   {"parameters", run.parameters},
                                   {"seed", opt.seed},
                                   {"tolerances", {{"eig", opt.tol.eig}, {"peri", opt.tol.peri}, {"zero", opt.tol.zero}}},
                                   {"format", opt.format},
                                   {"tool_version", tool_version},
                                   {"output", name},
                                   {"output_sha256", sha256_hex(r.out)}};
  std::ofstream(fs::path(out_dir) / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return r.code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = docergo::cli;
  CLI::App app{"Ergodicity of DOC channels and LDOI dual-unitary brickwork circuits"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string out_dir;
  app.add_option("--seed", opt.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--tol-eig", opt.tol.eig, "Cluster radius around eigenvalue 1")->capture_default_str();
  app.add_option("--tol-peri", opt.tol.peri, "Peripheral band 1 - |z| <= tol")->capture_default_str();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", out_dir, "Write output and manifest.json into DIR");

  Run run;
  std::string file;

  auto* stoch = app.add_subcommand("classify-stochastic", "Classify a column-stochastic matrix (Matrix JSON)");
  stoch->add_option("matrix", file)->required();
  auto* doc = app.add_subcommand("classify-doc", "Classify a DOC channel (Triple JSON)");
  doc->add_option("triple", file)->required();
  auto* gate = app.add_subcommand("check-gate", "Unitarity certificates of an LDOI gate (Triple JSON)");
  gate->add_option("triple", file)->required();
  auto* lam = app.add_subcommand("lambda", "Lambda_+ triple and circuit verdict of an LDOI gate (Triple JSON)");
  lam->add_option("triple", file)->required();
  auto* sim = app.add_subcommand("simulate", "Brickwork correlation table (config JSON)");
  sim->add_option("config", file)->required();

  std::string family;
  int seeds = 100, dim = 3, rank = 1;
  auto* sweep = app.add_subcommand("sweep", "Verdict frequencies over seeded gate families");
  sweep->add_option("--family", family)->required()->check(CLI::IsMember({"projection_dual", "ldui_dual"}));
  sweep->add_option("--seeds", seeds)->capture_default_str();
  sweep->add_option("--d", dim)->capture_default_str();
  sweep->add_option("--rank", rank, "Projection rank for projection_dual")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::parse_error;
  }

  cli::CommandResult r;
  if (*stoch) {
    run = {"classify-stochastic", {file}};
    r = cli::classify_stochastic_cmd(file, opt);
  } else if (*doc) {
    run = {"classify-doc", {file}};
    r = cli::classify_doc_cmd(file, opt);
  } else if (*gate) {
    run = {"check-gate", {file}};
    r = cli::check_gate_cmd(file, opt);
  } else if (*lam) {
    run = {"lambda", {file}};
    r = cli::lambda_cmd(file, opt);
  } else if (*sim) {
    run = {"simulate", {file}};
    r = cli::simulate_cmd(file, opt);
  } else {
    run = {"sweep", {}, {{"family", family}, {"seeds", seeds}, {"d", dim}, {"rank", rank}}};
    r = cli::sweep_cmd(family, seeds, dim, opt, rank);
  }
  return finish(run, r, opt, out_dir);
}
