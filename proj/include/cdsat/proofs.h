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

#ifndef CDSAT_PROOFS_H_
#define CDSAT_PROOFS_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cdsat/terms.h"
#include "cdsat/theory.h"

namespace cdsat {

// Sorted, duplicate-free.
using AssignmentSet = std::vector<Assignment>;
AssignmentSet MakeAssignmentSet(std::vector<Assignment> assignments);
bool SetContains(const AssignmentSet& set, const Assignment& a);

// Either hyps |- conclusion, or unsat(hyps).
struct Judgement {
  bool unsat = false;
  AssignmentSet hyps;
  Assignment conclusion{TermId(), Value::Bool(false)};  // entailments only

  static Judgement Entails(AssignmentSet hyps, Assignment conclusion) {
    return Judgement{false, std::move(hyps), std::move(conclusion)};
  }
  static Judgement Unsat(AssignmentSet set) {
    return Judgement{true, std::move(set), {TermId(), Value::Bool(false)}};
  }
  friend bool operator==(const Judgement& a, const Judgement& b) {
    return a.unsat == b.unsat && a.hyps == b.hyps &&
           (a.unsat || a.conclusion == b.conclusion);
  }
};

std::string JudgementToString(const TermStore& store, const Judgement& j);

// The five rules. Each returns the conclusion or throws
// Error(kMalformedNode) naming the violated side condition.
Judgement InputRule(const Problem& problem, int index);
Judgement TheoryRule(const TermStore& store, std::string_view module,
                     const AssignmentSet& premises,
                     const Assignment& conclusion);
// From an entailment J |- L and opp = flip(L): unsat(J + opp).
Judgement ClashRule(const Judgement& inference, const Assignment& opp);
// From unsat(E + A) and J |- A: unsat(E + J).
Judgement ResolveRule(const Assignment& pivot, const Judgement& left,
                      const Judgement& right);
// From unsat(E + A): E |- flip(A).
Judgement EntailRule(const Assignment& pivot, const Judgement& inner);

enum class ProofKind : uint8_t { kInput, kThy, kClash, kRes, kEntail };

struct ProofNode {
  ProofKind kind = ProofKind::kInput;
  int input_index = -1;
  std::string module;  // kThy
  std::string rule;    // kThy
  AssignmentSet premises;  // kThy
  // Theory conclusion, clash opposite, or resolve/entail pivot.
  Assignment assignment{TermId(), Value::Bool(false)};
  int left = -1;   // clash: inference; res: left; entail: inner
  int right = -1;  // res only
  Judgement judgement;
};

// A self-contained refutation: nodes in topological order (children first),
// the root, and the input positions its unsat set consists of.
struct RawProof {
  std::vector<ProofNode> nodes;
  int root = -1;
  std::vector<int> refuted_inputs;
};

// Proof DAG built during a run. Structurally equal nodes are shared.
class ProofStore {
 public:
  explicit ProofStore(const Problem& problem) : problem_(problem) {}

  int Input(int index);
  int Thy(std::string module, std::string rule, std::vector<Assignment> premises,
          Assignment conclusion);
  int Clash(int inference, Assignment opp);
  int Res(Assignment pivot, int left, int right);
  int Entail(Assignment pivot, int inner);

  const ProofNode& node(int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Nodes reachable from `root`, renumbered children-first.
  RawProof Extract(int root) const;

 private:
  int Intern(ProofNode node);

  const Problem& problem_;
  std::vector<ProofNode> nodes_;
  std::map<std::string, int> memo_;
};

struct CheckReport {
  bool accepted = false;
  int failing_node = -1;  // -1 with !accepted: the root-level check failed
  std::string reason;
};

// Replays every node with freshly computed conclusions, revalidates theory
// steps with the trusted checkers, and requires the root to refute a subset
// of the inputs.
CheckReport CheckProof(const RawProof& proof, const Problem& problem);

}  // namespace cdsat

#endif  // CDSAT_PROOFS_H_
