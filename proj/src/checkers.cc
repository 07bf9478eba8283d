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


// Trusted checkers for theory inferences. Nothing here consults the solver
// modules or trail: each check rebuilds its reasoning from the assignments.

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "cdsat/error.h"
#include "cdsat/linear.h"
#include "cdsat/theory.h"

namespace cdsat {

bool InferenceBefore(const Inference& a, const Inference& b) {
  const int la = a.premises.empty() ? -1 : a.premises.back();
  const int lb = b.premises.empty() ? -1 : b.premises.back();
  return std::tie(a.tier, la, a.conclusion) <
         std::tie(b.tier, lb, b.conclusion);
}

bool IsApplicable(const Trail& trail, const Inference& inference) {
  const Value* v = trail.ValueOf(inference.conclusion.term);
  return v == nullptr || *v != inference.conclusion.value;
}

std::optional<TheoryId> TheoryOfModule(std::string_view module) {
  if (module == "BB-LRA") return TheoryId::kLra;
  return TheoryFromName(module);
}

namespace {

constexpr int kMaxTruthTableAtoms = 16;
constexpr size_t kMaxBranches = size_t{1} << 14;

void CollectBoolAtoms(const TermStore& store, TermId t,
                      std::vector<TermId>& atoms) {
  const SymbolKind k = store.kind(t);
  if (IsConnective(k)) {
    for (TermId a : store.node(t).args) CollectBoolAtoms(store, a, atoms);
    return;
  }
  if (std::find(atoms.begin(), atoms.end(), t) == atoms.end()) {
    atoms.push_back(t);
  }
}

bool TruthValue(const TermStore& store, TermId t,
                const std::map<TermId, bool>& valuation) {
  const TermNode& n = store.node(t);
  switch (store.kind(t)) {
    case SymbolKind::kTrue:
      return true;
    case SymbolKind::kFalse:
      return false;
    case SymbolKind::kNot:
      return !TruthValue(store, n.args[0], valuation);
    case SymbolKind::kAnd:
      return std::all_of(n.args.begin(), n.args.end(), [&](TermId a) {
        return TruthValue(store, a, valuation);
      });
    case SymbolKind::kOr:
      return std::any_of(n.args.begin(), n.args.end(), [&](TermId a) {
        return TruthValue(store, a, valuation);
      });
    case SymbolKind::kImplies:
      return !TruthValue(store, n.args[0], valuation) ||
             TruthValue(store, n.args[1], valuation);
    default:
      return valuation.at(t);
  }
}

bool CheckBool(const TermStore& store, std::span<const Assignment> premises,
               const Assignment& conclusion) {
  std::vector<TermId> atoms;
  std::vector<Assignment> facts;
  for (const Assignment& p : premises) {
    if (!p.is_boolean()) continue;
    CollectBoolAtoms(store, p.term, atoms);
    facts.push_back(p);
  }
  CollectBoolAtoms(store, conclusion.term, atoms);
  if (static_cast<int>(atoms.size()) > kMaxTruthTableAtoms) return false;
  const uint32_t rows = uint32_t{1} << atoms.size();
  for (uint32_t row = 0; row < rows; ++row) {
    std::map<TermId, bool> valuation;
    for (size_t i = 0; i < atoms.size(); ++i) {
      valuation[atoms[i]] = (row >> i) & 1;
    }
    bool premises_hold = true;
    for (const Assignment& f : facts) {
      if (TruthValue(store, f.term, valuation) != f.value.boolean()) {
        premises_hold = false;
        break;
      }
    }
    if (premises_hold && TruthValue(store, conclusion.term, valuation) !=
                             conclusion.value.boolean()) {
      return false;
    }
  }
  return true;
}

// Congruence closure by naive fixpoint over the subterms of the facts, with
// one node per distinct value.
class NaiveClosure {
 public:
  explicit NaiveClosure(const TermStore& store) : store_(store) {}

  bool Consistent(std::span<const Assignment> facts) {
    for (const Assignment& f : facts) AddTerm(f.term);
    for (const Assignment& f : facts) {
      if (!f.is_boolean()) {
        Union(node_of_.at(f.term), ValueNode(f.value));
      } else if (store_.kind(f.term) == SymbolKind::kEq) {
        const TermNode& n = store_.node(f.term);
        const int a = node_of_.at(n.args[0]);
        const int b = node_of_.at(n.args[1]);
        if (f.value.boolean()) {
          Union(a, b);
        } else {
          diseqs_.emplace_back(a, b);
        }
      } else {
        Union(node_of_.at(f.term), ValueNode(f.value));
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < apps_.size(); ++i) {
        for (size_t j = i + 1; j < apps_.size(); ++j) {
          if (Congruent(apps_[i], apps_[j]) &&
              Find(node_of_[apps_[i]]) != Find(node_of_[apps_[j]])) {
            Union(node_of_[apps_[i]], node_of_[apps_[j]]);
            changed = true;
          }
        }
      }
      for (TermId t : arith_) {
        auto v = Evaluate(store_, t, [&](TermId leaf) -> const Value* {
          return ClassValue(node_of_.at(leaf));
        });
        if (v && Find(node_of_[t]) != Find(ValueNode(*v))) {
          Union(node_of_[t], ValueNode(*v));
          changed = true;
        }
      }
    }
    std::map<int, int> value_of_class;
    for (int v = 0; v < static_cast<int>(values_.size()); ++v) {
      auto [it, fresh] = value_of_class.emplace(Find(value_nodes_[v]), v);
      if (!fresh) return false;
    }
    for (auto [a, b] : diseqs_) {
      if (Find(a) == Find(b)) return false;
    }
    return true;
  }

 private:
  void AddTerm(TermId t) {
    if (node_of_.contains(t)) return;
    node_of_[t] = NewNode();
    const TermNode& n = store_.node(t);
    for (TermId a : n.args) AddTerm(a);
    const SymbolKind k = store_.kind(t);
    if (k == SymbolKind::kUninterpreted && !n.args.empty()) apps_.push_back(t);
    if (store_.sort(t) == store_.rat_sort() && IsArithmeticOperator(k)) {
      arith_.push_back(t);
    }
  }

  int NewNode() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }

  int ValueNode(const Value& v) {
    for (size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] == v) return value_nodes_[i];
    }
    values_.push_back(v);
    value_nodes_.push_back(NewNode());
    return value_nodes_.back();
  }

  const Value* ClassValue(int node) {
    const int r = Find(node);
    for (size_t i = 0; i < values_.size(); ++i) {
      if (Find(value_nodes_[i]) == r) return &values_[i];
    }
    return nullptr;
  }

  bool Congruent(TermId s, TermId t) {
    const TermNode& a = store_.node(s);
    const TermNode& b = store_.node(t);
    if (a.head != b.head) return false;
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (Find(node_of_[a.args[i]]) != Find(node_of_[b.args[i]])) return false;
    }
    return true;
  }

  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) { parent_[Find(a)] = Find(b); }

  const TermStore& store_;
  std::map<TermId, int> node_of_;
  std::vector<int> parent_;
  std::vector<TermId> apps_;
  std::vector<TermId> arith_;
  std::vector<Value> values_;
  std::vector<int> value_nodes_;
  std::vector<std::pair<int, int>> diseqs_;
};

using Conjunction = std::vector<Constraint>;
using Dnf = std::vector<Conjunction>;

Dnf Product(const Dnf& a, const Dnf& b) {
  if (a.size() * b.size() > kMaxBranches) {
    throw Error(ErrorCode::kTooLarge, "disjunctive normal form too large");
  }
  Dnf out;
  for (const Conjunction& x : a) {
    for (const Conjunction& y : b) {
      Conjunction c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

Dnf Sum(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  if (a.size() > kMaxBranches) {
    throw Error(ErrorCode::kTooLarge, "disjunctive normal form too large");
  }
  return a;
}

// Arithmetic content of t <- polarity; foreign atoms are unconstrained.
Dnf ToDnf(const TermStore& store, TermId t, bool polarity) {
  const TermNode& n = store.node(t);
  const Dnf top = {Conjunction{}};
  switch (store.kind(t)) {
    case SymbolKind::kTrue:
      return polarity ? top : Dnf{};
    case SymbolKind::kFalse:
      return polarity ? Dnf{} : top;
    case SymbolKind::kNot:
      return ToDnf(store, n.args[0], !polarity);
    case SymbolKind::kAnd:
    case SymbolKind::kOr: {
      // Conjunctive when (and, true) or (or, false).
      const bool conjunctive = (store.kind(t) == SymbolKind::kAnd) == polarity;
      Dnf acc = conjunctive ? top : Dnf{};
      for (TermId a : n.args) {
        Dnf d = ToDnf(store, a, polarity);
        acc = conjunctive ? Product(acc, d) : Sum(std::move(acc), d);
      }
      return acc;
    }
    case SymbolKind::kImplies:
      if (polarity) {
        return Sum(ToDnf(store, n.args[0], false),
                   ToDnf(store, n.args[1], true));
      }
      return Product(ToDnf(store, n.args[0], true),
                     ToDnf(store, n.args[1], false));
    default:
      if (IsArithmeticAtom(store, t)) {
        return {Conjunction{AtomConstraint(store, t, polarity)}};
      }
      return top;
  }
}

Dnf FactsToDnf(const TermStore& store, std::span<const Assignment> facts) {
  Dnf acc = {Conjunction{}};
  for (const Assignment& f : facts) {
    if (f.is_boolean()) {
      acc = Product(acc, ToDnf(store, f.term, f.value.boolean()));
    } else if (f.value.is_rational() && IsArithmeticVariable(store, f.term)) {
      Constraint c{Linearize(store, f.term), Relation::kEq};
      c.form.constant -= f.value.rational();
      for (Conjunction& conj : acc) conj.push_back(c);
    }
  }
  return acc;
}

}  // namespace

bool EufConsistent(const TermStore& store, std::span<const Assignment> facts) {
  return NaiveClosure(store).Consistent(facts);
}

bool LraConsistent(const TermStore& store, std::span<const Assignment> facts) {
  for (const Conjunction& branch : FactsToDnf(store, facts)) {
    if (SolveConstraints(branch).feasible) return true;
  }
  return false;
}

bool CheckInference(const TermStore& store, TheoryId theory,
                    std::span<const Assignment> premises,
                    const Assignment& conclusion) {
  if (!conclusion.is_boolean()) return false;
  try {
    std::vector<Assignment> facts(premises.begin(), premises.end());
    facts.push_back(Flip(conclusion));
    switch (theory) {
      case TheoryId::kBool:
        return CheckBool(store, premises, conclusion);
      case TheoryId::kEuf:
        return !EufConsistent(store, facts);
      case TheoryId::kLra:
        return !LraConsistent(store, facts);
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

}  // namespace cdsat
