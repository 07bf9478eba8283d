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

#ifndef CDSAT_DRIVER_H_
#define CDSAT_DRIVER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdsat/kernel.h"
#include "cdsat/proof_io.h"
#include "cdsat/smtlib.h"

namespace cdsat {

std::optional<ProofMode> ProofModeFromName(std::string_view name);

// What `solve` prints and writes for one script.
struct SolveOutput {
  SolveResult result;
  std::string stdout_text;  // verdict line, then model or inline proof
  std::string proof_text;   // empty unless a proof was produced
};

// Runs the script and renders the answer. `proof_format` is unset for
// "none". Proof text is produced for unsat runs when the script asks
// (get-proof) or `force_proof` is set.
SolveOutput SolveScript(Script& script, const SolverConfig& config,
                        std::optional<ProofFormat> proof_format,
                        bool force_proof);

struct ProofVerdict {
  bool accepted = false;
  std::string diagnosis;
};

// Checks proof text in either format against the script's inputs.
ProofVerdict CheckProofText(Script& script, std::string_view proof_text);

struct BenchRecord {
  std::string file;
  std::string verdict;
  long steps = 0;
  long decisions = 0;
  long conflicts = 0;
  bool proof_checked = false;
  long wall_millis = 0;
};

// Solves every *.smt2 file under `dir` (sorted by name) in proof-terms
// mode, checking each unsat proof and its resolution export. Files are
// solved on up to `threads` workers; the rows keep file order.
std::vector<BenchRecord> RunBench(const std::string& dir, long max_steps,
                                  int threads);
std::string BenchCsv(const std::vector<BenchRecord>& rows);

}  // namespace cdsat

#endif  // CDSAT_DRIVER_H_
