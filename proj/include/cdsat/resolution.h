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

#ifndef CDSAT_RESOLUTION_H_
#define CDSAT_RESOLUTION_H_

#include <compare>
#include <string>
#include <vector>

#include "cdsat/proofs.h"

namespace cdsat {

struct Literal {
  TermId term;
  bool positive = true;

  Literal Negated() const { return Literal{term, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

Literal LiteralOf(const Assignment& a);  // a must be Boolean
Assignment AssignmentOf(const Literal& l);

enum class ClauseOrigin : uint8_t { kInput, kLemma, kResolution };

struct ResClause {
  int id = 0;
  ClauseOrigin origin = ClauseOrigin::kInput;
  // Lemmas list the negated Boolean premises first and the conclusion last.
  std::vector<Literal> lits;
  std::string module;             // lemmas
  std::string rule;               // lemmas
  std::vector<Assignment> hyps;   // lemmas: first-order premises
  int left = -1, right = -1;      // resolution steps
  Literal pivot;                  // in `right`; its negation is in `left`
};

struct ResolutionProof {
  std::vector<ResClause> clauses;
  // First-order inputs the refutation depends on.
  std::vector<Assignment> hypotheses;
};

// Translation of an accepted proof term; throws Error(kUncheckedProof) when
// the proof does not pass CheckProof.
ResolutionProof ExportResolution(const RawProof& proof, const Problem& problem);

struct ReplayReport {
  bool ok = false;
  int failing_clause = -1;
  std::string reason;
};

// Replays every step by literal-set resolution and requires the last clause
// to be empty. With recheck_lemmas, theory lemmas are revalidated too.
ReplayReport ReplayResolution(const ResolutionProof& proof,
                              const Problem& problem, bool recheck_lemmas);

}  // namespace cdsat

#endif  // CDSAT_RESOLUTION_H_
