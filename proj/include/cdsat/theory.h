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

#ifndef CDSAT_THEORY_H_
#define CDSAT_THEORY_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdsat/terms.h"
#include "cdsat/trail.h"

namespace cdsat {

struct Inference {
  std::string module;  // producing module
  TheoryId theory;     // theory whose checker validates the step
  std::string rule;
  std::vector<int> premises;  // ascending trail indices
  Assignment conclusion;      // always Boolean
  int tier = 0;               // 0 evaluation, 1 propagation, 2 explanation
};

// Deterministic candidate order: tier, then latest premise, then conclusion.
bool InferenceBefore(const Inference& a, const Inference& b);

// True when the conclusion is unassigned on the trail or its flip is.
bool IsApplicable(const Trail& trail, const Inference& inference);

struct ModuleContext {
  TermStore& store;
  const Trail& trail;
  const Basis& basis;
};

class TheoryModule {
 public:
  virtual ~TheoryModule() = default;

  virtual std::string_view name() const = 0;
  virtual TheoryId theory() const = 0;

  // The highest-priority applicable inference, if any.
  virtual std::optional<Inference> Infer(ModuleContext& ctx) = 0;
  // An acceptable value for the first unassigned basis term the module owns.
  virtual std::optional<Assignment> Decide(ModuleContext& ctx) = 0;
  // Inferences to replay after undoing the first-order decision at trail
  // index `decision`, which is the latest element of `conflict`. None of
  // them uses the decision as a premise.
  virtual std::vector<Inference> ExplainUndo(ModuleContext& ctx,
                                             const ConflictState& conflict,
                                             int decision) = 0;
};

std::unique_ptr<TheoryModule> MakeBoolModule();
std::unique_ptr<TheoryModule> MakeEufModule();
std::unique_ptr<TheoryModule> MakeLraModule();
// The Fourier-Motzkin procedure wrapped as an opaque satisfiability oracle:
// it reports unsat cores only and never explains.
std::unique_ptr<TheoryModule> MakeBlackBoxLraModule();

// Theory of a module name: "Bool", "EUF", "LRA", or "BB-LRA".
std::optional<TheoryId> TheoryOfModule(std::string_view module);

// Whether premises entail the Boolean conclusion in the theory. Recomputed
// from scratch with procedures independent of the solver modules.
bool CheckInference(const TermStore& store, TheoryId theory,
                    std::span<const Assignment> premises,
                    const Assignment& conclusion);

// Satisfiability of a set of assignments in one theory, used by the
// brute-force oracles and the model checks in tests.
bool EufConsistent(const TermStore& store, std::span<const Assignment> facts);
bool LraConsistent(const TermStore& store, std::span<const Assignment> facts);

}  // namespace cdsat

#endif  // CDSAT_THEORY_H_
