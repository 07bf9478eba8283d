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

#ifndef CDSAT_LINEAR_H_
#define CDSAT_LINEAR_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdsat/terms.h"

namespace cdsat {

// sum(coeffs[x] * x) + constant, with no zero coefficients stored.
struct LinearForm {
  std::map<TermId, Rational> coeffs;
  Rational constant = 0;

  bool IsConstant() const { return coeffs.empty(); }
  Rational Coeff(TermId x) const;
  void AddScaled(const LinearForm& other, const Rational& factor);
  void Scale(const Rational& factor);
  // Replaces x by `expr` throughout.
  void Substitute(TermId x, const LinearForm& expr);
  // Value under `model`; variables missing from the model count as zero.
  Rational Eval(const std::map<TermId, Rational>& model) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// Arithmetic leaves: Rat-sorted terms whose head is not +, -, *, or a numeral.
bool IsArithmeticVariable(const TermStore& store, TermId t);
// True for <, <= and equality at sort Rat.
bool IsArithmeticAtom(const TermStore& store, TermId t);

LinearForm Linearize(const TermStore& store, TermId t);

enum class Relation : uint8_t { kLt, kLe, kEq, kNe };  // form REL 0

struct Constraint {
  LinearForm form;
  Relation rel;

  bool HoldsAt(const Rational& value) const;  // for a constant form
};

// The constraint expressed by atom <- value: (s <= t)<-true is s - t <= 0,
// (s <= t)<-false is t - s < 0, and so on.
Constraint AtomConstraint(const TermStore& store, TermId atom, bool value);

struct Bound {
  Rational value;
  bool strict = false;
};

// A value in the interval (lower, upper) with the given points excluded:
// zero if allowed, else the allowed integer closest to zero, else a midpoint.
// Returns nullopt when no such value exists.
std::optional<Rational> PickValue(const std::optional<Bound>& lower,
                                  const std::optional<Bound>& upper,
                                  const std::vector<Rational>& excluded);

struct FmResult {
  bool feasible = false;
  std::map<TermId, Rational> model;
};

// Exact satisfiability of a conjunction over the rationals by equality
// substitution and Fourier-Motzkin elimination. Disequalities are split on
// demand. A feasible result carries a model of every constraint.
FmResult SolveConstraints(const std::vector<Constraint>& constraints);

}  // namespace cdsat

#endif  // CDSAT_LINEAR_H_
