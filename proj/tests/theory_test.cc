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

#include <random>

#include "cdsat/linear.h"
#include "cdsat/theory.h"
#include "gtest/gtest.h"

namespace cdsat {
namespace {

class TheoryTest : public ::testing::Test {
 protected:
  TheoryTest() : store_(std::make_shared<TermStore>()), s_(*store_) {
    u_ = s_.DeclareSort("U");
    A_ = Bool("A");
    B_ = Bool("B");
    x_ = Rat("x");
    y_ = Rat("y");
    z_ = Rat("z");
    a_ = s_.Const(s_.DeclareFunction("a", {}, u_));
    b_ = s_.Const(s_.DeclareFunction("b", {}, u_));
    c_ = s_.Const(s_.DeclareFunction("c", {}, u_));
    f_ = s_.DeclareFunction("f", {u_}, u_);
  }

  TermId Bool(const std::string& n) {
    return s_.Const(s_.DeclareFunction(n, {}, s_.bool_sort()));
  }
  TermId Rat(const std::string& n) {
    return s_.Const(s_.DeclareFunction(n, {}, s_.rat_sort()));
  }
  TermId N(long n) { return s_.Numeral(n); }
  TermId F(TermId t) { return s_.App(f_, std::vector<TermId>{t}); }
  static Assignment T(TermId t) { return BoolAssignment(t, true); }
  static Assignment Fa(TermId t) { return BoolAssignment(t, false); }

  int Input(const Assignment& a) {
    return trail_.Append(a, Provenance::Input(trail_.size()));
  }
  int Apply(const Inference& inf) {
    return trail_.Append(inf.conclusion,
                         Provenance::Deduction(inf.module, inf.theory, inf.rule,
                                               inf.premises));
  }
  ModuleContext Ctx() {
    basis_ = std::make_unique<Basis>(Problem{store_, {}});
    return ModuleContext{s_, trail_, *basis_};
  }
  std::vector<Assignment> Premises(const Inference& inf) {
    std::vector<Assignment> out;
    for (int i : inf.premises) out.push_back(trail_.item(i).assignment);
    return out;
  }

  std::shared_ptr<TermStore> store_;
  TermStore& s_;
  SortId u_;
  SymbolId f_;
  TermId A_, B_, x_, y_, z_, a_, b_, c_;
  Trail trail_;
  std::unique_ptr<Basis> basis_;
};

TEST_F(TheoryTest, CheckInferenceExamples) {
  TermId clause = s_.Or(std::vector<TermId>{s_.Not(A_), B_});
  std::vector<Assignment> bool_premises = {T(clause), T(A_)};
  EXPECT_TRUE(CheckInference(s_, TheoryId::kBool, bool_premises, T(B_)));
  EXPECT_FALSE(CheckInference(s_, TheoryId::kBool, bool_premises, Fa(B_)));

  // 1 <= x and x <= 0 give 1 <= 0.
  std::vector<Assignment> lra = {T(s_.Le(N(1), x_)), T(s_.Le(x_, N(0)))};
  EXPECT_TRUE(CheckInference(s_, TheoryId::kLra, lra, T(s_.Le(N(1), N(0)))));

  std::vector<Assignment> euf = {T(s_.Eq(a_, b_))};
  EXPECT_FALSE(CheckInference(s_, TheoryId::kEuf, euf, T(s_.Eq(a_, c_))));
  euf.push_back(T(s_.Eq(b_, c_)));
  EXPECT_TRUE(CheckInference(s_, TheoryId::kEuf, euf, T(s_.Eq(a_, c_))));
  std::vector<Assignment> ab = {T(s_.Eq(a_, b_))};
  EXPECT_TRUE(CheckInference(s_, TheoryId::kEuf, ab, T(s_.Eq(F(a_), F(b_)))));
}

TEST_F(TheoryTest, FirstOrderFactsInCheckers) {
  std::vector<Assignment> p = {Assignment{x_, Value::Rat(3)}};
  EXPECT_TRUE(CheckInference(s_, TheoryId::kLra, p, Fa(s_.Eq(x_, N(4)))));
  EXPECT_FALSE(CheckInference(s_, TheoryId::kLra, p, T(s_.Eq(x_, N(4)))));
  std::vector<Assignment> q = {Assignment{a_, Value::Abstract(u_, 0)},
                               Assignment{b_, Value::Abstract(u_, 1)}};
  EXPECT_TRUE(CheckInference(s_, TheoryId::kEuf, q, Fa(s_.Eq(a_, b_))));
  EXPECT_TRUE(EufConsistent(s_, q));
  std::vector<Assignment> r = {Assignment{a_, Value::Abstract(u_, 0)},
                               Assignment{b_, Value::Abstract(u_, 0)},
                               Fa(s_.Eq(F(a_), F(b_)))};
  EXPECT_FALSE(EufConsistent(s_, r));
}

TEST_F(TheoryTest, BoolUnitPropagation) {
  TermId na = s_.Not(A_);
  TermId clause = s_.Or(std::vector<TermId>{na, B_});
  Input(T(clause));
  Input(T(A_));
  auto bool_module = MakeBoolModule();
  ModuleContext ctx = Ctx();
  // Evaluation of the negation comes first.
  auto first = bool_module->Infer(ctx);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->conclusion, Fa(na));
  EXPECT_EQ(first->tier, 0);
  Apply(*first);
  auto second = bool_module->Infer(ctx);
  ASSERT_TRUE(second);
  EXPECT_EQ(second->conclusion, T(B_));
  EXPECT_EQ(second->rule, "unit-prop");
  EXPECT_TRUE(CheckInference(s_, TheoryId::kBool, Premises(*second),
                             second->conclusion));
}

TEST_F(TheoryTest, BoolDecidesAtomsTrue) {
  Input(T(s_.Or(std::vector<TermId>{A_, B_})));
  auto m = MakeBoolModule();
  ModuleContext ctx = Ctx();
  auto d = m->Decide(ctx);
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, T(A_));
}

TEST_F(TheoryTest, EufTransitivity) {
  TermId ab = s_.Eq(a_, b_);
  TermId bc = s_.Eq(b_, c_);
  TermId ac = s_.Eq(a_, c_);
  int i = Input(T(ab));
  int j = Input(T(bc));
  auto euf = MakeEufModule();
  ModuleContext ctx = Ctx();
  auto inf = euf->Infer(ctx);
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->conclusion, T(ac));
  EXPECT_EQ(inf->premises, (std::vector<int>{i, j}));
}

TEST_F(TheoryTest, EufDecidesTheSmallestNonClashingValue) {
  Input(Fa(s_.Eq(a_, b_)));
  Input(Assignment{b_, Value::Abstract(u_, 0)});
  auto euf = MakeEufModule();
  ModuleContext ctx = Ctx();
  // Propagations do not fix a; the decision must avoid b's value.
  while (auto inf = euf->Infer(ctx)) Apply(*inf);
  auto d = euf->Decide(ctx);
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, (Assignment{a_, Value::Abstract(u_, 1)}));
}

TEST_F(TheoryTest, LraFmResolventOnEmptyInterval) {
  TermId yx = s_.Lt(y_, x_);
  TermId xz = s_.Lt(x_, z_);
  int i = Input(T(yx));
  int j = Input(T(xz));
  Input(Assignment{y_, Value::Rat(0)});
  Input(Assignment{z_, Value::Rat(0)});
  auto lra = MakeLraModule();
  ModuleContext ctx = Ctx();
  std::optional<Inference> fm;
  while (auto inf = lra->Infer(ctx)) {
    if (inf->tier == 2) {
      fm = inf;
      break;
    }
    Apply(*inf);
  }
  ASSERT_TRUE(fm);
  EXPECT_EQ(fm->premises, (std::vector<int>{i, j}));
  EXPECT_EQ(fm->conclusion, T(s_.Lt(y_, z_)));
  EXPECT_TRUE(CheckInference(s_, TheoryId::kLra, Premises(*fm), fm->conclusion));
}

TEST_F(TheoryTest, LraDecidesInsideTheInterval) {
  Input(T(s_.Lt(N(0), x_)));
  Input(T(s_.Lt(x_, N(1))));
  auto lra = MakeLraModule();
  ModuleContext ctx = Ctx();
  while (auto inf = lra->Infer(ctx)) Apply(*inf);
  auto d = lra->Decide(ctx);
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, (Assignment{x_, Value::Rat(Rational(1, 2))}));
}

TEST_F(TheoryTest, LraExplainUndoEliminatesTheDecidedVariable) {
  TermId yx = s_.Lt(y_, x_);
  TermId xz = s_.Lt(x_, z_);
  int i = Input(T(yx));
  int j = Input(T(xz));
  Input(Assignment{y_, Value::Rat(0)});
  int zi = Input(Assignment{z_, Value::Rat(0)});
  int d = trail_.Append(Assignment{x_, Value::Rat(5)},
                        Provenance::Decision("LRA", TheoryId::kLra));
  ConflictState e = MakeConflict(trail_, {d, zi, j}, -1);
  auto lra = MakeLraModule();
  ModuleContext ctx = Ctx();
  std::vector<Inference> replay = lra->ExplainUndo(ctx, e, d);
  ASSERT_EQ(replay.size(), 1u);
  EXPECT_EQ(replay[0].premises, (std::vector<int>{i, j}));
  EXPECT_EQ(replay[0].conclusion, T(s_.Lt(y_, z_)));
}

TEST_F(TheoryTest, LraExplainUndoWithOneBoundIsEmpty) {
  Input(T(s_.Lt(x_, z_)));
  int zi = Input(Assignment{z_, Value::Rat(0)});
  int d = trail_.Append(Assignment{x_, Value::Rat(5)},
                        Provenance::Decision("LRA", TheoryId::kLra));
  ConflictState e = MakeConflict(trail_, {0, zi, d}, -1);
  auto lra = MakeLraModule();
  ModuleContext ctx = Ctx();
  EXPECT_TRUE(lra->ExplainUndo(ctx, e, d).empty());
  auto bool_module = MakeBoolModule();
  EXPECT_TRUE(bool_module->ExplainUndo(ctx, e, d).empty());
}

TEST_F(TheoryTest, BlackBoxCoreExcludesTheLatestAtom) {
  TermId lo = s_.Le(N(1), x_);
  TermId hi = s_.Le(x_, N(0));
  int i = Input(T(lo));
  Input(T(hi));
  auto bb = MakeBlackBoxLraModule();
  ModuleContext ctx = Ctx();
  auto inf = bb->Infer(ctx);
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->conclusion, Fa(hi));
  EXPECT_EQ(inf->premises, std::vector<int>{i});
  EXPECT_EQ(inf->theory, TheoryId::kLra);
}

TEST_F(TheoryTest, BlackBoxIsSilentOnSatisfiableViews) {
  Input(T(s_.Le(N(1), x_)));
  auto bb = MakeBlackBoxLraModule();
  ModuleContext ctx = Ctx();
  EXPECT_FALSE(bb->Infer(ctx).has_value());
}

// Every inference any module emits on random arithmetic trails is accepted
// by the checker of its theory.
TEST_F(TheoryTest, RandomLraInferencesAreSound) {
  std::mt19937_64 rng(21);
  std::vector<TermId> vars = {x_, y_, z_};
  for (int round = 0; round < 150; ++round) {
    trail_ = Trail();
    for (int k = static_cast<int>(rng() % 4) + 2; k > 0; --k) {
      TermId l = vars[rng() % 3];
      TermId r = rng() % 2 ? vars[rng() % 3] : N(static_cast<long>(rng() % 5) - 2);
      if (l == r) continue;
      TermId atom = rng() % 2 ? s_.Lt(l, r) : s_.Le(l, r);
      if (trail_.Lookup(atom)) continue;
      Input(BoolAssignment(atom, rng() % 3 != 0));
    }
    if (rng() % 2) Input(Assignment{vars[rng() % 3], Value::Rat(rng() % 3)});
    auto lra = MakeLraModule();
    for (int step = 0; step < 20; ++step) {
      ModuleContext ctx = Ctx();
      auto inf = lra->Infer(ctx);
      if (!inf) break;
      ASSERT_TRUE(CheckInference(s_, inf->theory, Premises(*inf),
                                 inf->conclusion))
          << inf->rule << " " << AssignmentToString(s_, inf->conclusion);
      if (trail_.Lookup(inf->conclusion.term)) break;  // a conflict
      Apply(*inf);
    }
  }
}

}  // namespace
}  // namespace cdsat
