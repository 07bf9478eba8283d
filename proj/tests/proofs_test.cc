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

#include "cdsat/error.h"
#include "cdsat/kernel.h"
#include "cdsat/lcf.h"
#include "cdsat/proofs.h"
#include "cdsat/resolution.h"
#include "cdsat/smtlib.h"
#include "gtest/gtest.h"

namespace cdsat {
namespace {

class ProofsTest : public ::testing::Test {
 protected:
  ProofsTest()
      : script_(ParseScript(
            "(declare-const A Bool)(declare-const B Bool)"
            "(assert (or (not A) B))(assert (or (not A) (not B)))")),
        s_(*script_.problem.store) {
    A_ = s_.Const(*s_.FindFunction("A"));
    B_ = s_.Const(*s_.FindFunction("B"));
    c1_ = script_.problem.inputs[0];
    c2_ = script_.problem.inputs[1];
  }
  static Assignment T(TermId t) { return BoolAssignment(t, true); }
  static Assignment F(TermId t) { return BoolAssignment(t, false); }

  Script script_;
  TermStore& s_;
  TermId A_, B_;
  Assignment c1_{TermId(), Value::Bool(true)};
  Assignment c2_{TermId(), Value::Bool(true)};
};

TEST_F(ProofsTest, RuleConclusions) {
  Judgement thy =
      TheoryRule(s_, "Bool", MakeAssignmentSet({c1_, T(A_)}), T(B_));
  EXPECT_EQ(thy, Judgement::Entails(MakeAssignmentSet({c1_, T(A_)}), T(B_)));

  Judgement left = Judgement::Unsat(MakeAssignmentSet({c2_, T(A_), T(B_)}));
  Judgement res = ResolveRule(T(B_), left, thy);
  EXPECT_EQ(res, Judgement::Unsat(MakeAssignmentSet({c1_, c2_, T(A_)})));

  Judgement entail = EntailRule(T(A_), res);
  EXPECT_EQ(entail, Judgement::Entails(MakeAssignmentSet({c1_, c2_}), F(A_)));

  Judgement clash = ClashRule(thy, F(B_));
  EXPECT_EQ(clash, Judgement::Unsat(MakeAssignmentSet({c1_, T(A_), F(B_)})));

  EXPECT_EQ(InputRule(script_.problem, 1), Judgement::Entails({}, c2_));
}

TEST_F(ProofsTest, RulesRejectViolatedSideConditions) {
  auto malformed = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kMalformedNode;
    }
    return false;
  };
  EXPECT_TRUE(malformed([&] { InputRule(script_.problem, 2); }));
  EXPECT_TRUE(malformed(
      [&] { TheoryRule(s_, "Bool", MakeAssignmentSet({c1_}), T(B_)); }));
  EXPECT_TRUE(malformed(
      [&] { TheoryRule(s_, "Nope", MakeAssignmentSet({c1_}), T(B_)); }));
  Judgement thy =
      TheoryRule(s_, "Bool", MakeAssignmentSet({c1_, T(A_)}), T(B_));
  EXPECT_TRUE(malformed([&] { ClashRule(thy, T(B_)); }));
  Judgement unsat = ClashRule(thy, F(B_));
  EXPECT_TRUE(malformed([&] { ClashRule(unsat, T(B_)); }));
  // The pivot must sit in the left unsat set.
  EXPECT_TRUE(malformed([&] { ResolveRule(T(A_), ClashRule(thy, F(B_)), thy); }));
  EXPECT_TRUE(malformed([&] { EntailRule(T(B_), thy); }));
  EXPECT_TRUE(malformed([&] { EntailRule(c2_, unsat); }));
}

TEST_F(ProofsTest, StoreSharesEqualNodes) {
  ProofStore store(script_.problem);
  int a = store.Thy("Bool", "unit-prop", {c1_, T(A_)}, T(B_));
  int b = store.Thy("Bool", "unit-prop", {T(A_), c1_}, T(B_));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, store.Thy("Bool", "other", {c1_, T(A_)}, T(B_)));
}

TEST(ProofCheckTest, SolverRefutationIsAccepted) {
  Script s = ParseScript("(declare-const A Bool)(assert A)(assert (not A))");
  SolveResult r = Solve(s.problem, SolverConfig{});
  ASSERT_TRUE(r.proof);
  CheckReport rep = CheckProof(*r.proof, s.problem);
  EXPECT_TRUE(rep.accepted) << rep.reason;
}

TEST(ProofCheckTest, TamperedProofsAreRejectedAtTheNode) {
  Script s = ParseScript(
      "(declare-const A Bool)(declare-const B Bool)"
      "(assert (or (not A) B))(assert (or (not A) (not B)))(assert A)");
  SolveResult r = Solve(s.problem, SolverConfig{});
  ASSERT_EQ(r.status, Status::kUnsat);
  ASSERT_TRUE(CheckProof(*r.proof, s.problem).accepted);
  int res = -1;
  for (size_t k = 0; k < r.proof->nodes.size(); ++k) {
    if (r.proof->nodes[k].kind == ProofKind::kRes) res = static_cast<int>(k);
  }
  ASSERT_GE(res, 0);
  RawProof bad = *r.proof;
  // Swap the pivot for an assignment the left set does not contain.
  bad.nodes[res].assignment = s.problem.inputs[0];
  bad.nodes[res].assignment.value = Value::Bool(false);
  CheckReport rep = CheckProof(bad, s.problem);
  EXPECT_FALSE(rep.accepted);
  EXPECT_EQ(rep.failing_node, res);

  RawProof wrong_root = *r.proof;
  wrong_root.refuted_inputs.pop_back();
  EXPECT_FALSE(CheckProof(wrong_root, s.problem).accepted);
}

TEST(ProofCheckTest, InvalidTheoryStepIsRejected) {
  Script s = ParseScript(
      "(declare-sort U 0)(declare-const a U)(declare-const b U)"
      "(declare-const c U)(assert (= a b))(assert (not (= a c)))");
  TermStore& st = *s.problem.store;
  TermId ac = st.Eq(st.Const(*st.FindFunction("a")),
                    st.Const(*st.FindFunction("c")));
  ProofNode thy;
  thy.kind = ProofKind::kThy;
  thy.module = "EUF";
  thy.rule = "congruence";
  thy.premises = {s.problem.inputs[0]};
  thy.assignment = BoolAssignment(ac, true);
  ProofNode clash;
  clash.kind = ProofKind::kClash;
  clash.left = 0;
  clash.assignment = BoolAssignment(ac, false);
  RawProof p{{thy, clash}, 1, {0, 1}};
  CheckReport rep = CheckProof(p, s.problem);
  EXPECT_FALSE(rep.accepted);
  EXPECT_EQ(rep.failing_node, 0);
}

TEST_F(ProofsTest, LcfKernelGuardsConstruction) {
  LcfKernel kernel(script_.problem);
  Thm ax = kernel.Axiom(0);
  EXPECT_EQ(ax.judgement(), Judgement::Entails({}, c1_));
  Thm thy = kernel.Theory("Bool", {c1_, T(A_)}, T(B_));
  Thm clash = kernel.Clash(thy, F(B_));
  EXPECT_TRUE(clash.judgement().unsat);
  try {
    kernel.Resolve(c2_, clash, thy);
    FAIL() << "resolution on an absent pivot was accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKernelRejection);
  }
  EXPECT_THROW(kernel.Theory("Bool", {c1_}, T(B_)), Error);

  LcfKernel other(script_.problem);
  EXPECT_THROW(other.Clash(thy, F(B_)), Error);
}

TEST_F(ProofsTest, LcfCountsLiveTokens) {
  LcfKernel kernel(script_.problem);
  EXPECT_EQ(kernel.live_count(), 0);
  {
    Thm a = kernel.Axiom(0);
    Thm b = a;
    EXPECT_EQ(kernel.live_count(), 2);
    Thm c = std::move(b);
    EXPECT_EQ(kernel.live_count(), 2);
  }
  EXPECT_EQ(kernel.live_count(), 0);
  EXPECT_EQ(kernel.peak_count(), 2);
}

TEST(ResolutionTest, PropositionalRefutation) {
  Script s = ParseScript("(declare-const A Bool)(assert A)(assert (not A))");
  SolveResult r = Solve(s.problem, SolverConfig{});
  ResolutionProof res = ExportResolution(*r.proof, s.problem);
  int units = 0, lemmas = 0, steps = 0;
  for (const ResClause& c : res.clauses) {
    units += c.origin == ClauseOrigin::kInput;
    lemmas += c.origin == ClauseOrigin::kLemma;
    steps += c.origin == ClauseOrigin::kResolution;
    EXPECT_TRUE(c.hyps.empty());
  }
  EXPECT_EQ(units, 2);
  EXPECT_EQ(lemmas, 1);
  EXPECT_EQ(steps, 2);
  EXPECT_TRUE(res.hypotheses.empty());
  EXPECT_TRUE(res.clauses.back().lits.empty());
  EXPECT_TRUE(ReplayResolution(res, s.problem, true).ok);
}

TEST(ResolutionTest, AssignmentBecomesAGlobalHypothesis) {
  Script s = ParseScript(
      "(declare-const x Real)(assign x 3)(assert (= x 4))");
  SolveResult r = Solve(s.problem, SolverConfig{});
  ResolutionProof res = ExportResolution(*r.proof, s.problem);
  ASSERT_EQ(res.hypotheses.size(), 1u);
  EXPECT_EQ(res.hypotheses[0], s.problem.inputs[0]);
  bool lemma_hyp = false;
  for (const ResClause& c : res.clauses) {
    lemma_hyp |= c.origin == ClauseOrigin::kLemma && c.hyps.size() == 1 &&
                 c.hyps[0] == s.problem.inputs[0];
  }
  EXPECT_TRUE(lemma_hyp);
  EXPECT_TRUE(ReplayResolution(res, s.problem, true).ok);
}

TEST(ResolutionTest, ReplayRejectsTampering) {
  Script s = ParseScript(
      "(declare-const A Bool)(declare-const B Bool)"
      "(assert (or (not A) B))(assert (or (not A) (not B)))(assert A)");
  SolveResult r = Solve(s.problem, SolverConfig{});
  ResolutionProof res = ExportResolution(*r.proof, s.problem);
  ASSERT_TRUE(ReplayResolution(res, s.problem, true).ok);

  for (size_t k = 0; k < res.clauses.size(); ++k) {
    ResolutionProof bad = res;
    ResClause& c = bad.clauses[k];
    if (c.origin == ClauseOrigin::kResolution) {
      c.pivot = c.pivot.Negated();
    } else if (!c.lits.empty()) {
      c.lits.back() = c.lits.back().Negated();
    }
    EXPECT_FALSE(ReplayResolution(bad, s.problem, true).ok) << "clause " << k;
  }
  RawProof unchecked = *r.proof;
  unchecked.refuted_inputs.clear();
  EXPECT_THROW(ExportResolution(unchecked, s.problem), Error);
}

}  // namespace
}  // namespace cdsat
