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


// Linear rational arithmetic: evaluation of atoms under the variable values
// on the trail, Fourier-Motzkin explanations of empty feasible intervals, and
// model-constructing decisions inside the feasible interval.

#include <algorithm>
#include <map>

#include "cdsat/error.h"
#include "cdsat/linear.h"
#include "cdsat/theory.h"

namespace cdsat {
namespace {

struct BoundInfo {
  int item = -1;
  LinearForm form;  // oriented: lower bounds have a negative coefficient
  Bound bound;
};

struct Interval {
  std::optional<BoundInfo> lower;
  std::optional<BoundInfo> upper;
  std::vector<BoundInfo> excluded;  // disequalities, form as written

  bool Empty() const {
    if (!lower || !upper) return false;
    const Bound& l = lower->bound;
    const Bound& u = upper->bound;
    return l.value > u.value ||
           (l.value == u.value && (l.strict || u.strict));
  }
  std::vector<Rational> ExcludedValues() const {
    std::vector<Rational> out;
    for (const BoundInfo& b : excluded) out.push_back(b.bound.value);
    return out;
  }
};

// Renders form REL 0 with positive terms on the left and negated negative
// terms on the right, variables in id order and the constant last.
TermId RenderAtom(TermStore& store, const LinearForm& form, Relation rel) {
  std::vector<TermId> left, right;
  for (const auto& [x, c] : form.coeffs) {
    const Rational m = abs(c);
    TermId term = m == 1 ? x : store.Mul(store.Numeral(m), x);
    (sgn(c) > 0 ? left : right).push_back(term);
  }
  if (sgn(form.constant) > 0) left.push_back(store.Numeral(form.constant));
  if (sgn(form.constant) < 0) right.push_back(store.Numeral(-form.constant));
  auto side = [&](const std::vector<TermId>& ts) {
    return ts.empty() ? store.Numeral(0) : store.Add(ts);
  };
  const TermId l = side(left);
  const TermId r = side(right);
  switch (rel) {
    case Relation::kLt:
      return store.Lt(l, r);
    case Relation::kLe:
      return store.Le(l, r);
    case Relation::kEq:
      return store.Eq(l, r);
    case Relation::kNe:
      break;
  }
  throw Error(ErrorCode::kInternal, "cannot render a disequality atom");
}

class LraModule : public TheoryModule {
 public:
  std::string_view name() const override { return "LRA"; }
  TheoryId theory() const override { return TheoryId::kLra; }

  std::optional<Inference> Infer(ModuleContext& ctx) override {
    TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    std::optional<Inference> best;
    auto offer = [&](Inference inf) {
      if (!IsApplicable(trail, inf)) return;
      if (!best || InferenceBefore(inf, *best)) best = std::move(inf);
    };

    for (TermId t : ctx.basis.terms()) {
      if (!IsArithmeticAtom(store, t)) continue;
      const Constraint& c = ConstraintOf(store, t);
      std::vector<int> premises;
      Rational value = c.form.constant;
      bool complete = true;
      for (const auto& [x, coef] : c.form.coeffs) {
        auto i = trail.IndexOf(x);
        if (!i) {
          complete = false;
          break;
        }
        premises.push_back(*i);
        value += coef * trail.item(*i).assignment.value.rational();
      }
      if (!complete) continue;
      std::sort(premises.begin(), premises.end());
      offer(Inference{"LRA", TheoryId::kLra, "eval", std::move(premises),
                      BoolAssignment(t, c.HoldsAt(value)), 0});
    }

    auto keep = [](int) { return true; };
    for (TermId x : ctx.basis.terms()) {
      if (!IsArithmeticVariable(store, x) || trail.IndexOf(x)) continue;
      Interval iv = Bounds(store, trail, x, keep);
      if (auto inf = Explain(store, x, iv)) offer(std::move(*inf));
    }
    return best;
  }

  std::optional<Assignment> Decide(ModuleContext& ctx) override {
    const TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    for (TermId x : ctx.basis.terms()) {
      if (!IsArithmeticVariable(store, x) || trail.IndexOf(x)) continue;
      Interval iv = Bounds(store, trail, x, [](int) { return true; });
      auto v = PickValue(iv.lower ? std::optional<Bound>(iv.lower->bound)
                                  : std::nullopt,
                         iv.upper ? std::optional<Bound>(iv.upper->bound)
                                  : std::nullopt,
                         iv.ExcludedValues());
      if (!v) return std::nullopt;
      return Assignment{x, Value::Rat(*v)};
    }
    return std::nullopt;
  }

  std::vector<Inference> ExplainUndo(ModuleContext& ctx,
                                     const ConflictState&,
                                     int decision) override {
    TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    const TermId x = trail.item(decision).assignment.term;
    if (!IsArithmeticVariable(store, x)) return {};
    const int level = trail.item(decision).level;
    auto keep = [&](int i) { return trail.item(i).level < level; };
    Interval iv = Bounds(store, trail, x, keep);
    if (auto inf = Explain(store, x, iv)) return {std::move(*inf)};
    return {};
  }

 private:
  const Constraint& ConstraintOf(const TermStore& store, TermId atom) {
    auto it = atoms_.find(atom);
    if (it == atoms_.end()) {
      it = atoms_.emplace(atom, AtomConstraint(store, atom, true)).first;
    }
    return it->second;
  }

  // Bounds on x from kept atoms in which x is the only variable without a
  // kept value.
  template <typename Keep>
  Interval Bounds(const TermStore& store, const Trail& trail, TermId x,
                  const Keep& keep) {
    Interval iv;
    for (int i = 0; i < trail.size(); ++i) {
      if (!keep(i)) continue;
      const Assignment& a = trail.item(i).assignment;
      if (!a.is_boolean() || !IsArithmeticAtom(store, a.term)) continue;
      Constraint c = ConstraintOf(store, a.term);
      if (!a.value.boolean()) c = AtomConstraint(store, a.term, false);
      const Rational coef = c.form.Coeff(x);
      if (sgn(coef) == 0) continue;
      Rational rest = c.form.constant;
      bool unit = true;
      for (const auto& [y, cy] : c.form.coeffs) {
        if (y == x) continue;
        auto j = trail.IndexOf(y);
        if (!j || !keep(*j)) {
          unit = false;
          break;
        }
        rest += cy * trail.item(*j).assignment.value.rational();
      }
      if (!unit) continue;
      const Rational point = -rest / coef;
      const bool strict = c.rel == Relation::kLt;
      auto tighten_lower = [&](LinearForm f) {
        if (!iv.lower || point > iv.lower->bound.value ||
            (point == iv.lower->bound.value && strict &&
             !iv.lower->bound.strict)) {
          iv.lower = BoundInfo{i, std::move(f), Bound{point, strict}};
        }
      };
      auto tighten_upper = [&](LinearForm f) {
        if (!iv.upper || point < iv.upper->bound.value ||
            (point == iv.upper->bound.value && strict &&
             !iv.upper->bound.strict)) {
          iv.upper = BoundInfo{i, std::move(f), Bound{point, strict}};
        }
      };
      LinearForm negated = c.form;
      negated.Scale(-1);
      switch (c.rel) {
        case Relation::kLt:
        case Relation::kLe:
          if (sgn(coef) > 0) {
            tighten_upper(c.form);
          } else {
            tighten_lower(c.form);
          }
          break;
        case Relation::kEq:
          tighten_upper(sgn(coef) > 0 ? c.form : negated);
          tighten_lower(sgn(coef) < 0 ? c.form : negated);
          break;
        case Relation::kNe:
          iv.excluded.push_back(BoundInfo{i, c.form, Bound{point, false}});
          break;
      }
    }
    return iv;
  }

  // Eliminates x between the interval's bounds when it admits no value.
  std::optional<Inference> Explain(TermStore& store, TermId x,
                                   const Interval& iv) {
    if (!iv.lower || !iv.upper) return std::nullopt;
    const BoundInfo& lo = *iv.lower;
    const BoundInfo& up = *iv.upper;
    const Rational al = lo.form.Coeff(x);  // < 0
    const Rational au = up.form.Coeff(x);  // > 0
    LinearForm resolvent = lo.form;
    resolvent.Scale(au);
    resolvent.AddScaled(up.form, -al);
    resolvent.coeffs.erase(x);
    const bool strict = lo.bound.strict || up.bound.strict;
    if (iv.Empty()) {
      std::vector<int> premises = {std::min(lo.item, up.item),
                                   std::max(lo.item, up.item)};
      TermId atom =
          RenderAtom(store, resolvent, strict ? Relation::kLt : Relation::kLe);
      return Inference{"LRA",    TheoryId::kLra,
                       "fm",     std::move(premises),
                       BoolAssignment(atom, true), 2};
    }
    if (lo.bound.value != up.bound.value) return std::nullopt;
    for (const BoundInfo& d : iv.excluded) {
      if (d.bound.value != lo.bound.value) continue;
      // lower and upper meet at the excluded point: either they do not
      // really meet, or the excluded point differs from the meeting point.
      const Rational ad = d.form.Coeff(x);
      LinearForm gap = lo.form;
      gap.Scale(ad);
      gap.AddScaled(d.form, -al);
      gap.coeffs.erase(x);
      TermId strict_atom = RenderAtom(store, resolvent, Relation::kLt);
      TermId meets = RenderAtom(store, gap, Relation::kEq);
      TermId disjuncts[] = {strict_atom, store.Not(meets)};
      std::vector<int> premises = {lo.item, up.item, d.item};
      std::sort(premises.begin(), premises.end());
      premises.erase(std::unique(premises.begin(), premises.end()),
                     premises.end());
      return Inference{"LRA",       TheoryId::kLra,
                       "fm-diseq",  std::move(premises),
                       BoolAssignment(store.Or(disjuncts), true), 2};
    }
    return std::nullopt;
  }

  std::map<TermId, Constraint> atoms_;
};

}  // namespace

std::unique_ptr<TheoryModule> MakeLraModule() {
  return std::make_unique<LraModule>();
}

}  // namespace cdsat
