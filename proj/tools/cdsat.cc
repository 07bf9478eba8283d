// Copyright 2026 The CDSAT Kernel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, check-proof, bench, gen.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cdsat/driver.h"
#include "cdsat/error.h"
#include "cdsat/gen.h"

namespace {

constexpr int kExitVerdict = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw cdsat::Error(cdsat::ErrorCode::kIoError, "cannot write " + path);
}

struct SolveArgs {
  std::string file;
  std::string proof_format = "cdsat";
  std::string mode = "proof-terms";
  std::string proof_out;
  std::string trace;
  long max_steps = 1000000;
};

int RunSolve(const SolveArgs& args) {
  cdsat::Script script;
  try {
    script = cdsat::ReadScriptFile(args.file);
  } catch (const cdsat::ParseError& e) {
    std::cerr << args.file << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const cdsat::Error& e) {
    std::cerr << args.file << ": " << e.what() << "\n";
    return kExitUsage;
  }
  cdsat::SolverConfig config;
  config.max_steps = args.max_steps;
  config.proof_mode = *cdsat::ProofModeFromName(args.mode);
  std::optional<cdsat::ProofFormat> format;
  if (args.proof_format == "cdsat") format = cdsat::ProofFormat::kCdsat;
  if (args.proof_format == "res") format = cdsat::ProofFormat::kRes;
  bool wants_file = !args.proof_out.empty();
  if (wants_file && format && config.proof_mode != cdsat::ProofMode::kProofTerms) {
    std::cerr << "proof output needs --mode proof-terms\n";
    return kExitUsage;
  }
  std::ofstream trace;
  if (!args.trace.empty()) {
    trace.open(args.trace, std::ios::binary);
    if (!trace) {
      std::cerr << "cannot open trace file " << args.trace << "\n";
      return kExitUsage;
    }
    config.trace = &trace;
  }
  try {
    cdsat::SolveOutput out =
        cdsat::SolveScript(script, config, format, wants_file);
    std::cout << out.stdout_text;
    if (!out.proof_text.empty()) {
      if (wants_file) {
        WriteText(args.proof_out, out.proof_text);
      } else {
        std::cout << out.proof_text;
      }
    } else if (out.result.status == cdsat::Status::kUnsat && script.get_proof &&
               format && config.proof_mode != cdsat::ProofMode::kProofTerms) {
      std::cerr << "no proof file in this mode\n";
    }
    if (trace.is_open()) {
      trace.flush();
      if (!trace) throw cdsat::Error(cdsat::ErrorCode::kIoError, "trace write failed");
    }
  } catch (const cdsat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitVerdict;
}

int RunCheckProof(const std::string& problem, const std::string& proof) {
  cdsat::Script script;
  std::string text;
  try {
    script = cdsat::ReadScriptFile(problem);
    text = cdsat::ReadFile(proof);
  } catch (const cdsat::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  try {
    cdsat::ProofVerdict v = cdsat::CheckProofText(script, text);
    if (v.accepted) {
      std::cout << "accepted\n";
    } else {
      std::cout << "rejected\n" << v.diagnosis << "\n";
    }
  } catch (const cdsat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitVerdict;
}

int RunBenchCommand(const std::string& dir, const std::string& csv,
                    long max_steps) {
  try {
    unsigned hw = std::thread::hardware_concurrency();
    auto rows = cdsat::RunBench(dir, max_steps, hw == 0 ? 1 : static_cast<int>(hw));
    std::string text = cdsat::BenchCsv(rows);
    if (csv.empty()) {
      std::cout << text;
    } else {
      WriteText(csv, text);
      std::cout << rows.size() << " files\n";
    }
  } catch (const cdsat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitVerdict;
}

int RunGen(uint64_t seed, const std::string& family_name, int count,
           const std::string& out_dir) {
  auto family = cdsat::FamilyFromName(family_name);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "cannot create " << out_dir << "\n";
    return kExitUsage;
  }
  try {
    for (int k = 0; k < count; ++k) {
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%llu_%04d.smt2", family_name.c_str(),
                    static_cast<unsigned long long>(seed), k);
      WriteText((std::filesystem::path(out_dir) / name).string(),
                cdsat::GenerateScript(*family, seed, k));
    }
  } catch (const cdsat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict-driven solver with checkable proofs"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an SMT-LIB script");
  solve_cmd->add_option("file", solve.file)->required();
  solve_cmd->add_option("--proof-format", solve.proof_format)
      ->check(CLI::IsMember({"none", "cdsat", "res"}));
  solve_cmd->add_option("--mode", solve.mode)
      ->check(CLI::IsMember({"none", "proof-terms", "lcf"}));
  solve_cmd->add_option("--proof-out", solve.proof_out);
  solve_cmd->add_option("--trace", solve.trace);
  solve_cmd->add_option("--max-steps", solve.max_steps)
      ->check(CLI::PositiveNumber);

  std::string problem, proof;
  auto* check_cmd =
      app.add_subcommand("check-proof", "Check a proof file against a script");
  check_cmd->add_option("problem", problem)->required();
  check_cmd->add_option("proof", proof)->required();

  std::string bench_dir, csv;
  long bench_steps = 1000000;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every .smt2 in a directory");
  bench_cmd->add_option("dir", bench_dir)->required();
  bench_cmd->add_option("--csv", csv);
  bench_cmd->add_option("--max-steps", bench_steps)->check(CLI::PositiveNumber);

  uint64_t seed = 0;
  std::string family;
  int count = 0;
  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen", "Write seeded random problems");
  gen_cmd->add_option("--seed", seed)->required();
  gen_cmd->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"bool", "lra", "euf"}));
  gen_cmd->add_option("--count", count)->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out", out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*solve_cmd) return RunSolve(solve);
  if (*check_cmd) return RunCheckProof(problem, proof);
  if (*bench_cmd) return RunBenchCommand(bench_dir, csv, bench_steps);
  return RunGen(seed, family, count, out_dir);
}
