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

#ifndef CDSAT_KERNEL_H_
#define CDSAT_KERNEL_H_

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdsat/lcf.h"
#include "cdsat/proofs.h"
#include "cdsat/terms.h"
#include "cdsat/theory.h"
#include "cdsat/trail.h"

namespace cdsat {

enum class ProofMode : uint8_t { kNone, kProofTerms, kLcf };

struct SolverConfig {
  long max_steps = 1000000;
  ProofMode proof_mode = ProofMode::kProofTerms;
  // One tab-separated line per transition when set.
  std::ostream* trace = nullptr;
  // Per-step trail invariant scans, inference soundness checks, and the
  // repeated-state guard.
  bool debug_checks = false;
  bool native_lra = true;
  bool blackbox_lra = false;
};

struct SolverStats {
  long steps = 0;
  long decisions = 0;
  long conflicts = 0;
  long restrictions = 0;
  // Lcf mode: most theorem tokens alive after any transition, and how many
  // transitions ended with more tokens than trail length plus conflict size.
  long lcf_max_live = 0;
  long lcf_bound_violations = 0;
};

enum class Status : uint8_t { kSat, kUnsat, kUnknown };
std::string_view StatusName(Status status);

struct SolveResult {
  Status status = Status::kUnknown;
  // Values of the uninterpreted-headed basis terms, in basis order.
  std::vector<std::pair<TermId, Value>> model;
  std::optional<RawProof> proof;  // kProofTerms
  std::optional<Thm> theorem;     // kLcf
  // The input assignments the final conflict consists of.
  AssignmentSet refuted;
  SolverStats stats;
  std::string reason;  // why the run is unknown
};

enum class Transition : uint8_t {
  kDecide,
  kDeduce,
  kConflict,
  kResolve,
  kBackjump,
  kUndo,
  kFail,
  kSat,
  kStepLimit,
};

// The conflict-driven transition system. Solve() runs to a verdict; Step()
// exposes single transitions for tests.
class Solver {
 public:
  Solver(Problem problem, SolverConfig config);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SolveResult Solve();

  // Performs one transition. After a terminal transition (kFail, kSat,
  // kStepLimit) further calls return the same value.
  Transition Step();
  bool finished() const { return finished_; }
  SolveResult TakeResult();

  // Pushes a decision outside the module policies.
  void ForceDecision(const Assignment& a, const std::string& module);

  const Problem& problem() const { return problem_; }
  const Trail& trail() const { return trail_; }
  const std::optional<ConflictState>& conflict() const { return conflict_; }
  const SolverStats& stats() const { return stats_; }
  const Basis& basis() const { return basis_; }

 private:
  struct Handle {
    int node = -1;
    std::optional<Thm> thm;
  };

  void PushInputs();
  void FinishUnsat(const Handle& root, std::vector<Assignment> refuted);
  Handle MakeInput(int index);
  Handle MakeThy(const Inference& inf);
  Handle MakeClash(const Handle& inference, const Assignment& opp);
  Handle MakeRes(const Assignment& pivot, const Handle& left,
                 const Handle& right);
  Handle MakeEntail(const Assignment& pivot, const Handle& inner);
  Handle ItemHandle(int index) const;
  int Attach(int index, Handle h);

  Transition ApplyInference(const Inference& inf);
  Transition AnalyzeConflict();
  Transition Resolve(int latest);
  Transition Backjump(int latest);
  Transition UndoClear(int latest);
  Transition Saturated();
  std::vector<int> Restrict(int level);
  TheoryModule* ModuleNamed(std::string_view name) const;

  void Trace(std::string_view rule, std::string_view module,
             const Assignment* a, std::optional<int> level,
             std::optional<int> conflict_size);
  void AfterTransition();

  Problem problem_;
  SolverConfig config_;
  TermStore& store_;
  Trail trail_;
  Basis basis_;
  std::vector<std::unique_ptr<TheoryModule>> modules_;
  size_t cursor_ = 0;
  std::optional<ConflictState> conflict_;
  std::unique_ptr<ProofStore> proofs_;
  std::unique_ptr<LcfKernel> lcf_;
  std::vector<std::optional<Thm>> item_thms_;
  std::optional<Thm> conflict_thm_;
  SolverStats stats_;
  bool finished_ = false;
  Transition final_ = Transition::kStepLimit;
  long final_conflict_size_ = 0;
  SolveResult result_;
  std::unordered_set<std::string> seen_states_;
};

SolveResult Solve(const Problem& problem, const SolverConfig& config);

// Checks that every input evaluates to its assigned value under the model.
// Returns the index of the first input that is not endorsed, or -1.
int FirstUnendorsedInput(const Problem& problem,
                         const std::vector<std::pair<TermId, Value>>& model);

}  // namespace cdsat

#endif  // CDSAT_KERNEL_H_
