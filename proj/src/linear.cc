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


#include "cdsat/linear.h"

#include <algorithm>
#include <set>
#include <utility>

#include "cdsat/error.h"

namespace cdsat {

Rational LinearForm::Coeff(TermId x) const {
  auto it = coeffs.find(x);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void LinearForm::AddScaled(const LinearForm& other, const Rational& factor) {
  if (sgn(factor) == 0) return;
  for (const auto& [x, c] : other.coeffs) {
    Rational& slot = coeffs[x];
    slot += c * factor;
    if (sgn(slot) == 0) coeffs.erase(x);
  }
  constant += other.constant * factor;
}

void LinearForm::Scale(const Rational& factor) {
  if (sgn(factor) == 0) {
    coeffs.clear();
    constant = 0;
    return;
  }
  for (auto& [x, c] : coeffs) c *= factor;
  constant *= factor;
}

void LinearForm::Substitute(TermId x, const LinearForm& expr) {
  auto it = coeffs.find(x);
  if (it == coeffs.end()) return;
  Rational c = it->second;
  coeffs.erase(it);
  AddScaled(expr, c);
}

Rational LinearForm::Eval(const std::map<TermId, Rational>& model) const {
  Rational sum = constant;
  for (const auto& [x, c] : coeffs) {
    auto it = model.find(x);
    if (it != model.end()) sum += c * it->second;
  }
  return sum;
}

bool IsArithmeticVariable(const TermStore& store, TermId t) {
  return store.sort(t) == store.rat_sort() &&
         !IsArithmeticOperator(store.kind(t));
}

bool IsArithmeticAtom(const TermStore& store, TermId t) {
  switch (store.kind(t)) {
    case SymbolKind::kLt:
    case SymbolKind::kLe:
      return true;
    case SymbolKind::kEq:
      return store.sort(store.node(t).args[0]) == store.rat_sort();
    default:
      return false;
  }
}

LinearForm Linearize(const TermStore& store, TermId t) {
  const TermNode& n = store.node(t);
  LinearForm f;
  switch (store.kind(t)) {
    case SymbolKind::kNumeral:
      f.constant = store.head(t).numeral;
      return f;
    case SymbolKind::kAdd:
      for (TermId a : n.args) f.AddScaled(Linearize(store, a), 1);
      return f;
    case SymbolKind::kSub:
      f = Linearize(store, n.args[0]);
      f.AddScaled(Linearize(store, n.args[1]), -1);
      return f;
    case SymbolKind::kNeg:
      f = Linearize(store, n.args[0]);
      f.Scale(-1);
      return f;
    case SymbolKind::kMul: {
      LinearForm a = Linearize(store, n.args[0]);
      LinearForm b = Linearize(store, n.args[1]);
      if (!a.IsConstant() && !b.IsConstant()) {
        throw Error(ErrorCode::kUnsupported, "non-linear product");
      }
      if (a.IsConstant()) {
        b.Scale(a.constant);
        return b;
      }
      a.Scale(b.constant);
      return a;
    }
    default:
      if (store.sort(t) != store.rat_sort()) {
        throw Error(ErrorCode::kIllSorted, "linearizing a non-rational term");
      }
      f.coeffs.emplace(t, Rational(1));
      return f;
  }
}

bool Constraint::HoldsAt(const Rational& value) const {
  switch (rel) {
    case Relation::kLt:
      return sgn(value) < 0;
    case Relation::kLe:
      return sgn(value) <= 0;
    case Relation::kEq:
      return sgn(value) == 0;
    case Relation::kNe:
      return sgn(value) != 0;
  }
  return false;
}

Constraint AtomConstraint(const TermStore& store, TermId atom, bool value) {
  const TermNode& n = store.node(atom);
  LinearForm lhs = Linearize(store, n.args[0]);
  LinearForm rhs = Linearize(store, n.args[1]);
  LinearForm diff = lhs;  // lhs - rhs
  diff.AddScaled(rhs, -1);
  LinearForm rev = rhs;  // rhs - lhs
  rev.AddScaled(lhs, -1);
  switch (store.kind(atom)) {
    case SymbolKind::kLe:
      return value ? Constraint{diff, Relation::kLe}
                   : Constraint{rev, Relation::kLt};
    case SymbolKind::kLt:
      return value ? Constraint{diff, Relation::kLt}
                   : Constraint{rev, Relation::kLe};
    case SymbolKind::kEq:
      return Constraint{diff, value ? Relation::kEq : Relation::kNe};
    default:
      throw Error(ErrorCode::kInternal, "not an arithmetic atom");
  }
}

std::optional<Rational> PickValue(const std::optional<Bound>& lower,
                                  const std::optional<Bound>& upper,
                                  const std::vector<Rational>& excluded) {
  auto inside = [&](const Rational& q) {
    if (lower && (q < lower->value || (lower->strict && q == lower->value))) {
      return false;
    }
    if (upper && (q > upper->value || (upper->strict && q == upper->value))) {
      return false;
    }
    return true;
  };
  auto allowed = [&](const Rational& q) {
    return inside(q) &&
           std::find(excluded.begin(), excluded.end(), q) == excluded.end();
  };
  if (lower && upper) {
    if (lower->value > upper->value) return std::nullopt;
    if (lower->value == upper->value) {
      if (lower->strict || upper->strict || !allowed(lower->value)) {
        return std::nullopt;
      }
      return lower->value;
    }
  }
  if (allowed(0)) return Rational(0);

  // Smallest and largest integers in the interval, when bounded.
  std::optional<mpz_class> kmin, kmax;
  if (lower) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), lower->value.get_num_mpz_t(),
               lower->value.get_den_mpz_t());
    if (lower->strict && Rational(c) == lower->value) c += 1;
    kmin = c;
  }
  if (upper) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), upper->value.get_num_mpz_t(),
               upper->value.get_den_mpz_t());
    if (upper->strict && Rational(f) == upper->value) f -= 1;
    kmax = f;
  }
  if (!(kmin && kmax && *kmin > *kmax)) {
    mpz_class center = 0;
    if (kmin && center < *kmin) center = *kmin;
    if (kmax && center > *kmax) center = *kmax;
    std::vector<mpz_class> candidates;
    const long reach = static_cast<long>(excluded.size()) + 1;
    for (long d = 0; d <= reach; ++d) {
      candidates.push_back(center + d);
      candidates.push_back(center - d);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const mpz_class& a, const mpz_class& b) {
                if (abs(a) != abs(b)) return abs(a) < abs(b);
                return a > b;
              });
    for (const mpz_class& k : candidates) {
      if (allowed(Rational(k))) return Rational(k);
    }
  }
  if (!lower || !upper) return std::nullopt;  // unreachable for finite sets
  Rational mid = (lower->value + upper->value) / 2;
  while (!allowed(mid)) mid = (lower->value + mid) / 2;
  return mid;
}

namespace {

// Scales a constraint so its smallest variable has coefficient +-1, making
// syntactically redundant copies identical.
void Normalize(Constraint& c) {
  if (c.form.IsConstant()) return;
  Rational lead = abs(c.form.coeffs.begin()->second);
  if (c.rel == Relation::kEq || c.rel == Relation::kNe) {
    lead = c.form.coeffs.begin()->second;
  }
  c.form.Scale(1 / lead);
}

struct ConstraintLess {
  bool operator()(const Constraint& a, const Constraint& b) const {
    if (a.rel != b.rel) return a.rel < b.rel;
    if (a.form.constant != b.form.constant) {
      return a.form.constant < b.form.constant;
    }
    return std::lexicographical_compare(
        a.form.coeffs.begin(), a.form.coeffs.end(), b.form.coeffs.begin(),
        b.form.coeffs.end(), [](const auto& x, const auto& y) {
          if (x.first != y.first) return x.first < y.first;
          return x.second < y.second;
        });
  }
};

struct Elimination {
  TermId var;
  std::vector<Constraint> lowers;  // negative coefficient on var
  std::vector<Constraint> uppers;  // positive coefficient on var
};

// Solves a system without disequalities; returns a model or nullopt.
std::optional<std::map<TermId, Rational>> SolveClosed(
    std::vector<Constraint> cs) {
  std::vector<std::pair<TermId, LinearForm>> substitutions;
  std::set<TermId> all_vars;
  for (const Constraint& c : cs) {
    for (const auto& [x, coef] : c.form.coeffs) all_vars.insert(x);
  }
  // Equalities first: solve for the smallest variable and substitute.
  for (;;) {
    auto it = std::find_if(cs.begin(), cs.end(), [](const Constraint& c) {
      return c.rel == Relation::kEq && !c.form.IsConstant();
    });
    if (it == cs.end()) break;
    auto [x, a] = *it->form.coeffs.begin();
    LinearForm expr = it->form;  // x = -(form - a x) / a
    expr.coeffs.erase(x);
    expr.Scale(-1 / a);
    cs.erase(it);
    for (Constraint& c : cs) c.form.Substitute(x, expr);
    for (auto& [y, e] : substitutions) e.Substitute(x, expr);
    substitutions.emplace_back(x, expr);
  }
  std::vector<Elimination> eliminations;
  for (;;) {
    std::set<Constraint, ConstraintLess> unique;
    std::set<TermId> vars;
    for (Constraint& c : cs) {
      if (c.form.IsConstant()) {
        if (!c.HoldsAt(c.form.constant)) return std::nullopt;
        continue;
      }
      Normalize(c);
      unique.insert(c);
      for (const auto& [x, coef] : c.form.coeffs) vars.insert(x);
    }
    if (vars.empty()) break;
    cs.assign(unique.begin(), unique.end());
    // Eliminate the variable producing the fewest resolvents.
    TermId best;
    size_t best_cost = 0;
    for (TermId x : vars) {
      size_t lo = 0, up = 0;
      for (const Constraint& c : cs) {
        int s = sgn(c.form.Coeff(x));
        lo += s < 0;
        up += s > 0;
      }
      size_t cost = lo * up;
      if (!best.valid() || cost < best_cost) {
        best = x;
        best_cost = cost;
      }
    }
    Elimination e{best, {}, {}};
    std::vector<Constraint> rest;
    for (Constraint& c : cs) {
      int s = sgn(c.form.Coeff(best));
      if (s < 0) {
        e.lowers.push_back(std::move(c));
      } else if (s > 0) {
        e.uppers.push_back(std::move(c));
      } else {
        rest.push_back(std::move(c));
      }
    }
    for (const Constraint& l : e.lowers) {
      for (const Constraint& u : e.uppers) {
        const Rational al = -l.form.Coeff(best);
        const Rational au = u.form.Coeff(best);
        Constraint r{l.form, (l.rel == Relation::kLt || u.rel == Relation::kLt)
                                 ? Relation::kLt
                                 : Relation::kLe};
        r.form.Scale(au);
        r.form.AddScaled(u.form, al);
        r.form.coeffs.erase(best);
        rest.push_back(std::move(r));
      }
    }
    eliminations.push_back(std::move(e));
    cs = std::move(rest);
  }

  std::map<TermId, Rational> model;
  for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) {
    std::optional<Bound> lower, upper;
    for (const Constraint& l : it->lowers) {
      // a x + rest REL 0 with a < 0:  x > -rest / a  (or >=)
      const Rational a = l.form.Coeff(it->var);
      LinearForm rest = l.form;
      rest.coeffs.erase(it->var);
      Bound b{-rest.Eval(model) / a, l.rel == Relation::kLt};
      if (!lower || b.value > lower->value ||
          (b.value == lower->value && b.strict)) {
        lower = b;
      }
    }
    for (const Constraint& u : it->uppers) {
      const Rational a = u.form.Coeff(it->var);
      LinearForm rest = u.form;
      rest.coeffs.erase(it->var);
      Bound b{-rest.Eval(model) / a, u.rel == Relation::kLt};
      if (!upper || b.value < upper->value ||
          (b.value == upper->value && b.strict)) {
        upper = b;
      }
    }
    auto v = PickValue(lower, upper, {});
    if (!v) throw Error(ErrorCode::kInternal, "back-substitution failed");
    model[it->var] = *v;
  }
  for (TermId x : all_vars) model.emplace(x, Rational(0));
  for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
    model[it->first] = it->second.Eval(model);
  }
  return model;
}

bool SolveWithDisequalities(const std::vector<Constraint>& closed,
                            const std::vector<Constraint>& diseqs,
                            std::map<TermId, Rational>* model) {
  auto m = SolveClosed(closed);
  if (!m) return false;
  for (size_t i = 0; i < diseqs.size(); ++i) {
    if (sgn(diseqs[i].form.Eval(*m)) != 0) continue;
    std::vector<Constraint> remaining = diseqs;
    remaining.erase(remaining.begin() + i);
    for (int side : {1, -1}) {
      std::vector<Constraint> branch = closed;
      Constraint strict{diseqs[i].form, Relation::kLt};
      strict.form.Scale(side);
      branch.push_back(std::move(strict));
      if (SolveWithDisequalities(branch, remaining, model)) return true;
    }
    return false;
  }
  *model = std::move(*m);
  return true;
}

}  // namespace

FmResult SolveConstraints(const std::vector<Constraint>& constraints) {
  std::vector<Constraint> closed, diseqs;
  for (const Constraint& c : constraints) {
    (c.rel == Relation::kNe ? diseqs : closed).push_back(c);
  }
  FmResult result;
  result.feasible = SolveWithDisequalities(closed, diseqs, &result.model);
  if (!result.feasible) result.model.clear();
  return result;
}

}  // namespace cdsat
