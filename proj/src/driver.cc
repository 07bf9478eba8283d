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

#include "cdsat/driver.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include "cdsat/error.h"
#include "cdsat/resolution.h"

namespace cdsat {

std::optional<ProofMode> ProofModeFromName(std::string_view name) {
  if (name == "none") return ProofMode::kNone;
  if (name == "proof-terms") return ProofMode::kProofTerms;
  if (name == "lcf") return ProofMode::kLcf;
  return std::nullopt;
}

SolveOutput SolveScript(Script& script, const SolverConfig& config,
                        std::optional<ProofFormat> proof_format,
                        bool force_proof) {
  SolveOutput out;
  out.result = Solve(script.problem, config);
  const TermStore& store = *script.problem.store;
  out.stdout_text = std::string(StatusName(out.result.status)) + "\n";
  if (out.result.status == Status::kSat && script.get_model) {
    out.stdout_text += PrintModel(store, out.result.model) + "\n";
  }
  bool want_proof = script.get_proof || force_proof;
  if (out.result.status == Status::kUnsat && want_proof && proof_format &&
      out.result.proof) {
    if (*proof_format == ProofFormat::kCdsat) {
      out.proof_text = WriteCdsatProof(store, *out.result.proof);
    } else {
      out.proof_text = WriteResolutionProof(
          store, ExportResolution(*out.result.proof, script.problem));
    }
  }
  return out;
}

ProofVerdict CheckProofText(Script& script, std::string_view proof_text) {
  ProofVerdict v;
  TermStore& store = *script.problem.store;
  try {
    if (DetectProofFormat(proof_text) == ProofFormat::kCdsat) {
      RawProof proof = ReadCdsatProof(proof_text, store);
      CheckReport r = CheckProof(proof, script.problem);
      v.accepted = r.accepted;
      if (!r.accepted) {
        v.diagnosis = (r.failing_node >= 0
                           ? "node " + std::to_string(r.failing_node) + ": "
                           : std::string("root: ")) +
                      r.reason;
      }
    } else {
      ResolutionProof proof = ReadResolutionProof(proof_text, store);
      ReplayReport r = ReplayResolution(proof, script.problem, true);
      v.accepted = r.ok;
      if (!r.ok) {
        v.diagnosis = (r.failing_clause >= 0
                           ? "clause " + std::to_string(r.failing_clause) + ": "
                           : std::string("proof: ")) +
                      r.reason;
      }
    }
  } catch (const ParseError& e) {
    v.accepted = false;
    v.diagnosis = std::string("unreadable proof: ") + e.what();
  }
  return v;
}

namespace {

BenchRecord BenchOne(const std::filesystem::path& path, long max_steps) {
  BenchRecord row;
  row.file = path.filename().string();
  auto start = std::chrono::steady_clock::now();
  try {
    Script script = ReadScriptFile(path.string());
    SolverConfig config;
    config.max_steps = max_steps;
    config.proof_mode = ProofMode::kProofTerms;
    SolveResult r = Solve(script.problem, config);
    row.verdict = std::string(StatusName(r.status));
    row.steps = r.stats.steps;
    row.decisions = r.stats.decisions;
    row.conflicts = r.stats.conflicts;
    if (r.status == Status::kUnsat && r.proof) {
      bool accepted = CheckProof(*r.proof, script.problem).accepted;
      row.proof_checked =
          accepted &&
          ReplayResolution(ExportResolution(*r.proof, script.problem),
                           script.problem, true)
              .ok;
    }
  } catch (const Error& e) {
    row.verdict = "error";
  }
  row.wall_millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return row;
}

}  // namespace

std::vector<BenchRecord> RunBench(const std::string& dir, long max_steps,
                                  int threads) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".smt2") {
      files.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIoError, "cannot list " + dir);
  std::sort(files.begin(), files.end());
  std::vector<BenchRecord> rows(files.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < files.size(); i = next++) {
      rows[i] = BenchOne(files[i], max_steps);
    }
  };
  std::vector<std::thread> pool;
  int n = std::max(1, std::min<int>(threads, static_cast<int>(files.size())));
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string BenchCsv(const std::vector<BenchRecord>& rows) {
  std::string out =
      "file,verdict,steps,decisions,conflicts,proof_checked,wall_millis\n";
  for (const BenchRecord& r : rows) {
    out += r.file + "," + r.verdict + "," + std::to_string(r.steps) + "," +
           std::to_string(r.decisions) + "," + std::to_string(r.conflicts) +
           "," + (r.proof_checked ? "true" : "false") + "," +
           std::to_string(r.wall_millis) + "\n";
  }
  return out;
}

}  // namespace cdsat
