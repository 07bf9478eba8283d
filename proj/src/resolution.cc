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


#include "cdsat/resolution.h"

#include <algorithm>
#include <map>

#include "cdsat/error.h"

namespace cdsat {

Literal LiteralOf(const Assignment& a) {
  if (!a.is_boolean()) {
    throw Error(ErrorCode::kNotBoolean, "literal of a first-order assignment");
  }
  return Literal{a.term, a.value.boolean()};
}

Assignment AssignmentOf(const Literal& l) {
  return BoolAssignment(l.term, l.positive);
}

namespace {

using LitSet = std::vector<Literal>;

LitSet Normalize(LitSet lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

LitSet Resolve(const LitSet& left, const LitSet& right, const Literal& pivot) {
  LitSet out;
  for (const Literal& l : left) {
    if (l != pivot.Negated()) out.push_back(l);
  }
  for (const Literal& l : right) {
    if (l != pivot) out.push_back(l);
  }
  return Normalize(std::move(out));
}

class Exporter {
 public:
  Exporter(const RawProof& proof, const Problem& problem)
      : proof_(proof), problem_(problem) {}

  ResolutionProof Run() {
    clause_of_node_.assign(proof_.nodes.size(), -1);
    for (size_t k = 0; k < proof_.nodes.size(); ++k) Translate(k);
    const Judgement root = proof_.nodes[proof_.root].judgement;
    int current = clause_of_node_[proof_.root];
    for (const Assignment& a : root.hyps) {
      if (!a.is_boolean()) {
        out_.hypotheses.push_back(a);
        continue;
      }
      const int unit = InputUnit(a);
      current = AddResolution(current, unit, LiteralOf(a));
    }
    return std::move(out_);
  }

 private:
  int Add(ResClause c) {
    c.id = static_cast<int>(out_.clauses.size());
    sets_.push_back(Normalize(c.lits));
    out_.clauses.push_back(std::move(c));
    return out_.clauses.back().id;
  }

  int InputUnit(const Assignment& a) {
    auto it = units_.find(a);
    if (it != units_.end()) return it->second;
    ResClause c;
    c.origin = ClauseOrigin::kInput;
    c.lits = {LiteralOf(a)};
    const int id = Add(std::move(c));
    units_.emplace(a, id);
    return id;
  }

  int AddResolution(int left, int right, const Literal& pivot) {
    ResClause c;
    c.origin = ClauseOrigin::kResolution;
    c.left = left;
    c.right = right;
    c.pivot = pivot;
    c.lits = Resolve(sets_[left], sets_[right], pivot);
    return Add(std::move(c));
  }

  void Translate(size_t k) {
    const ProofNode& n = proof_.nodes[k];
    switch (n.kind) {
      case ProofKind::kInput: {
        const Assignment& a = problem_.inputs[n.input_index];
        if (a.is_boolean()) clause_of_node_[k] = InputUnit(a);
        break;
      }
      case ProofKind::kThy: {
        ResClause c;
        c.origin = ClauseOrigin::kLemma;
        c.module = n.module;
        c.rule = n.rule;
        for (const Assignment& p : n.premises) {
          if (p.is_boolean()) {
            c.lits.push_back(LiteralOf(p).Negated());
          } else {
            c.hyps.push_back(p);
          }
        }
        c.lits.push_back(LiteralOf(n.assignment));
        clause_of_node_[k] = Add(std::move(c));
        break;
      }
      case ProofKind::kClash:
      case ProofKind::kEntail:
        clause_of_node_[k] = clause_of_node_[n.left];
        break;
      case ProofKind::kRes:
        clause_of_node_[k] =
            AddResolution(clause_of_node_[n.left], clause_of_node_[n.right],
                          LiteralOf(n.assignment));
        break;
    }
  }

  const RawProof& proof_;
  const Problem& problem_;
  ResolutionProof out_;
  std::vector<LitSet> sets_;
  std::vector<int> clause_of_node_;
  std::map<Assignment, int> units_;
};

}  // namespace

ResolutionProof ExportResolution(const RawProof& proof, const Problem& problem) {
  CheckReport report = CheckProof(proof, problem);
  if (!report.accepted) {
    throw Error(ErrorCode::kUncheckedProof,
                "refusing to export a rejected proof: " + report.reason);
  }
  // Judgements are recomputed by the checker; refresh them before use.
  RawProof checked = proof;
  for (size_t k = 0; k < checked.nodes.size(); ++k) {
    ProofNode& n = checked.nodes[k];
    switch (n.kind) {
      case ProofKind::kInput:
        n.judgement = InputRule(problem, n.input_index);
        break;
      case ProofKind::kThy:
        n.premises = MakeAssignmentSet(n.premises);
        n.judgement = Judgement::Entails(n.premises, n.assignment);
        break;
      case ProofKind::kClash:
        n.judgement = ClashRule(checked.nodes[n.left].judgement, n.assignment);
        break;
      case ProofKind::kRes:
        n.judgement = ResolveRule(n.assignment, checked.nodes[n.left].judgement,
                                  checked.nodes[n.right].judgement);
        break;
      case ProofKind::kEntail:
        n.judgement = EntailRule(n.assignment, checked.nodes[n.left].judgement);
        break;
    }
  }
  return Exporter(checked, problem).Run();
}

ReplayReport ReplayResolution(const ResolutionProof& proof,
                              const Problem& problem, bool recheck_lemmas) {
  ReplayReport report;
  auto fail = [&](int id, std::string why) {
    report.failing_clause = id;
    report.reason = std::move(why);
    return report;
  };
  for (const Assignment& h : proof.hypotheses) {
    if (h.is_boolean() || std::find(problem.inputs.begin(), problem.inputs.end(),
                                    h) == problem.inputs.end()) {
      return fail(-1, "hypothesis is not a first-order input");
    }
  }
  if (proof.clauses.empty()) return fail(-1, "no clauses");
  std::vector<LitSet> sets;
  for (size_t k = 0; k < proof.clauses.size(); ++k) {
    const ResClause& c = proof.clauses[k];
    const int id = static_cast<int>(k);
    if (c.id != id) return fail(id, "clause ids are not consecutive");
    switch (c.origin) {
      case ClauseOrigin::kInput: {
        if (c.lits.size() != 1) return fail(id, "input clause is not a unit");
        const Assignment a = AssignmentOf(c.lits[0]);
        if (std::find(problem.inputs.begin(), problem.inputs.end(), a) ==
            problem.inputs.end()) {
          return fail(id, "unit clause is not an input");
        }
        break;
      }
      case ClauseOrigin::kLemma: {
        if (c.lits.empty()) return fail(id, "lemma without conclusion");
        for (const Assignment& h : c.hyps) {
          if (std::find(proof.hypotheses.begin(), proof.hypotheses.end(), h) ==
              proof.hypotheses.end()) {
            return fail(id, "lemma hypothesis not among the global ones");
          }
        }
        if (recheck_lemmas) {
          auto theory = TheoryOfModule(c.module);
          if (!theory) return fail(id, "unknown module " + c.module);
          std::vector<Assignment> premises = c.hyps;
          for (size_t i = 0; i + 1 < c.lits.size(); ++i) {
            premises.push_back(AssignmentOf(c.lits[i].Negated()));
          }
          if (!CheckInference(*problem.store, *theory, premises,
                              AssignmentOf(c.lits.back()))) {
            return fail(id, "theory lemma rejected by " + c.module);
          }
        }
        break;
      }
      case ClauseOrigin::kResolution: {
        if (c.left < 0 || c.left >= id || c.right < 0 || c.right >= id) {
          return fail(id, "resolution parent does not precede the step");
        }
        const LitSet& l = sets[c.left];
        const LitSet& r = sets[c.right];
        if (!std::binary_search(l.begin(), l.end(), c.pivot.Negated()) ||
            !std::binary_search(r.begin(), r.end(), c.pivot)) {
          return fail(id, "pivot does not occur with opposite signs");
        }
        if (Resolve(l, r, c.pivot) != Normalize(c.lits)) {
          return fail(id, "resolvent differs from the recorded clause");
        }
        break;
      }
    }
    sets.push_back(Normalize(c.lits));
  }
  const int last = static_cast<int>(proof.clauses.size()) - 1;
  if (proof.clauses.back().origin != ClauseOrigin::kResolution ||
      !sets.back().empty()) {
    return fail(last, "last clause is not an empty resolvent");
  }
  report.ok = true;
  return report;
}

}  // namespace cdsat
