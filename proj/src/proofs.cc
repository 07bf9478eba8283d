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


#include "cdsat/proofs.h"

#include <algorithm>
#include <functional>

#include "cdsat/error.h"

namespace cdsat {

AssignmentSet MakeAssignmentSet(std::vector<Assignment> assignments) {
  std::sort(assignments.begin(), assignments.end());
  assignments.erase(std::unique(assignments.begin(), assignments.end()),
                    assignments.end());
  return assignments;
}

bool SetContains(const AssignmentSet& set, const Assignment& a) {
  return std::binary_search(set.begin(), set.end(), a);
}

std::string JudgementToString(const TermStore& store, const Judgement& j) {
  std::string out = j.unsat ? "unsat{" : "{";
  for (size_t i = 0; i < j.hyps.size(); ++i) {
    if (i > 0) out += ", ";
    out += AssignmentToString(store, j.hyps[i]);
  }
  out += "}";
  if (!j.unsat) out += " |- " + AssignmentToString(store, j.conclusion);
  return out;
}

namespace {

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedNode, why);
}

AssignmentSet Without(const AssignmentSet& set, const Assignment& a) {
  AssignmentSet out;
  for (const Assignment& x : set) {
    if (x != a) out.push_back(x);
  }
  return out;
}

std::string ValueKey(const Value& v) {
  if (v.is_bool()) return v.boolean() ? "T" : "F";
  if (v.is_rational()) return "Q" + v.rational().get_str();
  return "A" + std::to_string(v.abstract().sort.value()) + ":" +
         std::to_string(v.abstract().index);
}

std::string AssignmentKey(const Assignment& a) {
  return std::to_string(a.term.value()) + "=" + ValueKey(a.value) + ";";
}

}  // namespace

Judgement InputRule(const Problem& problem, int index) {
  if (index < 0 || index >= static_cast<int>(problem.inputs.size())) {
    Malformed("input index " + std::to_string(index) + " out of range");
  }
  return Judgement::Entails({}, problem.inputs[index]);
}

Judgement TheoryRule(const TermStore& store, std::string_view module,
                     const AssignmentSet& premises,
                     const Assignment& conclusion) {
  auto theory = TheoryOfModule(module);
  if (!theory) Malformed("unknown module " + std::string(module));
  if (!conclusion.is_boolean()) Malformed("theory conclusion is not Boolean");
  if (!CheckInference(store, *theory, premises, conclusion)) {
    Malformed(std::string(module) + " does not validate the inference");
  }
  return Judgement::Entails(premises, conclusion);
}

Judgement ClashRule(const Judgement& inference, const Assignment& opp) {
  if (inference.unsat) Malformed("clash of an unsat judgement");
  if (!opp.is_boolean() || opp != Flip(inference.conclusion)) {
    Malformed("clash opposite is not the flip of the conclusion");
  }
  AssignmentSet set = inference.hyps;
  set.push_back(opp);
  return Judgement::Unsat(MakeAssignmentSet(std::move(set)));
}

Judgement ResolveRule(const Assignment& pivot, const Judgement& left,
                      const Judgement& right) {
  if (!pivot.is_boolean()) Malformed("first-order resolve pivot");
  if (!left.unsat) Malformed("resolve left premise is not an unsat judgement");
  if (!SetContains(left.hyps, pivot)) Malformed("pivot not in the left set");
  if (right.unsat) Malformed("resolve right premise is not an entailment");
  if (right.conclusion != pivot) Malformed("right premise does not entail pivot");
  AssignmentSet set = Without(left.hyps, pivot);
  set.insert(set.end(), right.hyps.begin(), right.hyps.end());
  return Judgement::Unsat(MakeAssignmentSet(std::move(set)));
}

Judgement EntailRule(const Assignment& pivot, const Judgement& inner) {
  if (!pivot.is_boolean()) Malformed("first-order entail pivot");
  if (!inner.unsat) Malformed("entail premise is not an unsat judgement");
  if (!SetContains(inner.hyps, pivot)) Malformed("pivot not in the inner set");
  return Judgement::Entails(Without(inner.hyps, pivot), Flip(pivot));
}

int ProofStore::Intern(ProofNode node) {
  std::string key = std::to_string(static_cast<int>(node.kind)) + "|" +
                    std::to_string(node.input_index) + "|" + node.module +
                    "|" + node.rule + "|" + std::to_string(node.left) + "|" +
                    std::to_string(node.right) + "|";
  if (node.assignment.term.valid()) key += AssignmentKey(node.assignment);
  key += "|";
  for (const Assignment& p : node.premises) key += AssignmentKey(p);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const int id = size();
  nodes_.push_back(std::move(node));
  memo_.emplace(std::move(key), id);
  return id;
}

int ProofStore::Input(int index) {
  ProofNode n;
  n.kind = ProofKind::kInput;
  n.input_index = index;
  n.judgement = InputRule(problem_, index);
  n.assignment = n.judgement.conclusion;
  return Intern(std::move(n));
}

int ProofStore::Thy(std::string module, std::string rule,
                    std::vector<Assignment> premises, Assignment conclusion) {
  ProofNode n;
  n.kind = ProofKind::kThy;
  n.module = std::move(module);
  n.rule = std::move(rule);
  n.premises = MakeAssignmentSet(std::move(premises));
  n.assignment = std::move(conclusion);
  n.judgement =
      TheoryRule(*problem_.store, n.module, n.premises, n.assignment);
  return Intern(std::move(n));
}

int ProofStore::Clash(int inference, Assignment opp) {
  ProofNode n;
  n.kind = ProofKind::kClash;
  n.left = inference;
  n.assignment = std::move(opp);
  n.judgement = ClashRule(nodes_.at(inference).judgement, n.assignment);
  return Intern(std::move(n));
}

int ProofStore::Res(Assignment pivot, int left, int right) {
  ProofNode n;
  n.kind = ProofKind::kRes;
  n.left = left;
  n.right = right;
  n.assignment = std::move(pivot);
  n.judgement = ResolveRule(n.assignment, nodes_.at(left).judgement,
                            nodes_.at(right).judgement);
  return Intern(std::move(n));
}

int ProofStore::Entail(Assignment pivot, int inner) {
  ProofNode n;
  n.kind = ProofKind::kEntail;
  n.left = inner;
  n.assignment = std::move(pivot);
  n.judgement = EntailRule(n.assignment, nodes_.at(inner).judgement);
  return Intern(std::move(n));
}

RawProof ProofStore::Extract(int root) const {
  RawProof raw;
  std::vector<int> renumber(nodes_.size(), -1);
  // Iterative post-order so long resolution chains do not exhaust the stack.
  std::vector<std::pair<int, bool>> stack = {{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (renumber[id] >= 0) continue;
    const ProofNode& n = nodes_[id];
    if (!expanded) {
      stack.push_back({id, true});
      if (n.right >= 0 && renumber[n.right] < 0) stack.push_back({n.right, false});
      if (n.left >= 0 && renumber[n.left] < 0) stack.push_back({n.left, false});
      continue;
    }
    ProofNode copy = n;
    if (copy.left >= 0) copy.left = renumber[copy.left];
    if (copy.right >= 0) copy.right = renumber[copy.right];
    renumber[id] = static_cast<int>(raw.nodes.size());
    raw.nodes.push_back(std::move(copy));
  }
  raw.root = renumber[root];
  const Judgement& j = nodes_[root].judgement;
  for (const Assignment& a : j.hyps) {
    for (size_t i = 0; i < problem_.inputs.size(); ++i) {
      if (problem_.inputs[i] == a) {
        raw.refuted_inputs.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  std::sort(raw.refuted_inputs.begin(), raw.refuted_inputs.end());
  return raw;
}

CheckReport CheckProof(const RawProof& proof, const Problem& problem) {
  CheckReport report;
  const int n = static_cast<int>(proof.nodes.size());
  if (proof.root < 0 || proof.root >= n) {
    report.reason = "root index out of range";
    return report;
  }
  std::vector<Judgement> computed(n);
  for (int k = 0; k < n; ++k) {
    const ProofNode& node = proof.nodes[k];
    auto child = [&](int c, const char* what) -> const Judgement& {
      if (c < 0 || c >= k) {
        Malformed(std::string(what) + " child does not precede the node");
      }
      return computed[c];
    };
    try {
      switch (node.kind) {
        case ProofKind::kInput:
          computed[k] = InputRule(problem, node.input_index);
          if (!(computed[k].conclusion == node.assignment)) {
            Malformed("input node states a different assignment");
          }
          break;
        case ProofKind::kThy:
          computed[k] = TheoryRule(*problem.store, node.module,
                                   MakeAssignmentSet(node.premises),
                                   node.assignment);
          break;
        case ProofKind::kClash:
          computed[k] = ClashRule(child(node.left, "clash"), node.assignment);
          break;
        case ProofKind::kRes:
          computed[k] = ResolveRule(node.assignment, child(node.left, "left"),
                                    child(node.right, "right"));
          break;
        case ProofKind::kEntail:
          computed[k] = EntailRule(node.assignment, child(node.left, "inner"));
          break;
      }
    } catch (const Error& e) {
      report.failing_node = k;
      report.reason = e.what();
      return report;
    }
  }
  const Judgement& root = computed[proof.root];
  if (!root.unsat) {
    report.failing_node = proof.root;
    report.reason = "root does not conclude unsatisfiability";
    return report;
  }
  std::vector<Assignment> listed;
  for (int i : proof.refuted_inputs) {
    if (i < 0 || i >= static_cast<int>(problem.inputs.size())) {
      report.reason = "refuted input index out of range";
      return report;
    }
    listed.push_back(problem.inputs[i]);
  }
  if (MakeAssignmentSet(std::move(listed)) != root.hyps) {
    report.reason = "root set differs from the listed inputs";
    return report;
  }
  report.accepted = true;
  return report;
}

}  // namespace cdsat
