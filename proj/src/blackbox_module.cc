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


// A satisfiability procedure used only through its verdict. On an
// unsatisfiable view the adapter shrinks the queried set to a minimal core by
// deletion and turns the core into an inference refuting its latest Boolean
// element.

#include <algorithm>

#include "cdsat/error.h"
#include "cdsat/linear.h"
#include "cdsat/theory.h"

namespace cdsat {
namespace {

struct OracleQuery {
  std::vector<int> items;  // trail indices, ascending
  std::vector<Constraint> constraints;
};

class BlackBoxLraModule : public TheoryModule {
 public:
  std::string_view name() const override { return "BB-LRA"; }
  TheoryId theory() const override { return TheoryId::kLra; }

  std::optional<Inference> Infer(ModuleContext& ctx) override {
    OracleQuery q = View(ctx.store, ctx.trail);
    if (SolveConstraints(q.constraints).feasible) return std::nullopt;

    // Deletion-based core, in trail order.
    std::vector<size_t> core(q.items.size());
    for (size_t i = 0; i < core.size(); ++i) core[i] = i;
    for (size_t k = 0; k < q.items.size(); ++k) {
      std::vector<size_t> trial;
      std::vector<Constraint> cs;
      for (size_t i : core) {
        if (i == k) continue;
        trial.push_back(i);
        cs.push_back(q.constraints[i]);
      }
      if (!SolveConstraints(cs).feasible) core = std::move(trial);
    }
    int latest_boolean = -1;
    for (size_t i : core) {
      if (ctx.trail.item(q.items[i]).assignment.is_boolean()) {
        latest_boolean = std::max(latest_boolean, q.items[i]);
      }
    }
    if (latest_boolean < 0) {
      throw Error(ErrorCode::kUnsupported,
                  "black-box core has no Boolean assignment to refute");
    }
    std::vector<int> premises;
    for (size_t i : core) {
      if (q.items[i] != latest_boolean) premises.push_back(q.items[i]);
    }
    return Inference{"BB-LRA",
                     TheoryId::kLra,
                     "bb-core",
                     std::move(premises),
                     Flip(ctx.trail.item(latest_boolean).assignment),
                     0};
  }

  // Values come from a model of the current view, so a decision never
  // contradicts an atom already assigned.
  std::optional<Assignment> Decide(ModuleContext& ctx) override {
    const TermStore& store = ctx.store;
    for (TermId x : ctx.basis.terms()) {
      if (!IsArithmeticVariable(store, x) || ctx.trail.IndexOf(x)) continue;
      FmResult r = SolveConstraints(View(store, ctx.trail).constraints);
      if (!r.feasible) return std::nullopt;
      auto it = r.model.find(x);
      return Assignment{x, Value::Rat(it == r.model.end() ? Rational(0)
                                                           : it->second)};
    }
    return std::nullopt;
  }

  std::vector<Inference> ExplainUndo(ModuleContext&, const ConflictState&,
                                     int) override {
    return {};
  }

 private:
  static OracleQuery View(const TermStore& store, const Trail& trail) {
    OracleQuery q;
    for (int i = 0; i < trail.size(); ++i) {
      const Assignment& a = trail.item(i).assignment;
      if (a.is_boolean()) {
        if (!IsArithmeticAtom(store, a.term)) continue;
        q.items.push_back(i);
        q.constraints.push_back(
            AtomConstraint(store, a.term, a.value.boolean()));
      } else if (a.value.is_rational() && IsArithmeticVariable(store, a.term)) {
        Constraint c{Linearize(store, a.term), Relation::kEq};
        c.form.constant -= a.value.rational();
        q.items.push_back(i);
        q.constraints.push_back(std::move(c));
      }
    }
    return q;
  }
};

}  // namespace

std::unique_ptr<TheoryModule> MakeBlackBoxLraModule() {
  return std::make_unique<BlackBoxLraModule>();
}

}  // namespace cdsat
