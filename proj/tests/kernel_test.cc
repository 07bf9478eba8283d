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

#include <sstream>

#include "cdsat/error.h"
#include "cdsat/gen.h"
#include "cdsat/kernel.h"
#include "cdsat/smtlib.h"
#include "gtest/gtest.h"

namespace cdsat {
namespace {

SolverConfig Debug(ProofMode mode = ProofMode::kProofTerms) {
  SolverConfig c;
  c.proof_mode = mode;
  c.debug_checks = true;
  return c;
}

Value ModelValue(const SolveResult& r, const TermStore& s,
                 const std::string& name) {
  for (const auto& [t, v] : r.model) {
    if (TermToString(s, t) == name) return v;
  }
  ADD_FAILURE() << name << " missing from the model";
  return Value::Bool(false);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(KernelTest, ContradictoryLiteralsAreUnsat) {
  Script s = ParseScript(
      "(declare-const A Bool)(assert A)(assert (not A))(check-sat)");
  SolveResult r = Solve(s.problem, Debug());
  EXPECT_EQ(r.status, Status::kUnsat);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(CheckProof(*r.proof, s.problem).accepted);
}

TEST(KernelTest, UnitPropagationThenSaturation) {
  Script s = ParseScript(
      "(declare-const A Bool)(declare-const B Bool)"
      "(assert (or A B))(assign A false)(check-sat)");
  SolveResult r = Solve(s.problem, Debug());
  ASSERT_EQ(r.status, Status::kSat);
  EXPECT_EQ(ModelValue(r, *s.problem.store, "B"), Value::Bool(true));
  EXPECT_EQ(r.stats.decisions, 0);
}

TEST(KernelTest, AssignmentAgainstEqualityAtom) {
  Script s = ParseScript(
      "(declare-const x Real)(assign x 3)(assert (= x 4))(check-sat)");
  std::ostringstream trace;
  SolverConfig c = Debug();
  c.trace = &trace;
  SolveResult r = Solve(s.problem, c);
  ASSERT_EQ(r.status, Status::kUnsat);
  EXPECT_EQ(r.refuted, MakeAssignmentSet(s.problem.inputs));
  EXPECT_EQ(Lines(trace.str()),
            (std::vector<std::string>{"1\tconflict\tLRA\t(= x 4)<-false\t0\t2",
                                      "2\tfail\t-\t-\t0\t2"}));
}

TEST(KernelTest, BackjumpLearnsTheNegatedDecision) {
  Script s = ParseScript(
      "(declare-const A Bool)(declare-const B Bool)"
      "(assert (or (not A) B))(assert (or (not A) (not B)))(check-sat)");
  Solver solver(s.problem, Debug());
  const TermStore& st = *s.problem.store;
  std::vector<Transition> seen;
  while (!solver.finished()) {
    Transition t = solver.Step();
    seen.push_back(t);
    if (t == Transition::kBackjump) break;
  }
  ASSERT_EQ(seen.back(), Transition::kBackjump);
  EXPECT_EQ(seen.front(), Transition::kDecide);
  EXPECT_NE(std::find(seen.begin(), seen.end(), Transition::kResolve),
            seen.end());
  const TrailItem& learned = solver.trail().items().back();
  EXPECT_EQ(AssignmentToString(st, learned.assignment), "A<-false");
  EXPECT_EQ(learned.level, 0);
  EXPECT_EQ(learned.provenance.justification, (std::vector<int>{0, 1}));
  SolveResult r = solver.Solve();
  ASSERT_EQ(r.status, Status::kSat);
  EXPECT_EQ(ModelValue(r, st, "A"), Value::Bool(false));
}

TEST(KernelTest, UndoReplaysTheEliminationResolvent) {
  Script s = ParseScript(
      "(declare-const x Real)(declare-const y Real)(declare-const z Real)"
      "(assert (< y x))(assert (< x z))(assign y 0)(assign z 0)(check-sat)");
  std::ostringstream trace;
  SolverConfig c = Debug();
  c.trace = &trace;
  Solver solver(s.problem, c);
  TermStore& st = *s.problem.store;
  TermId x = st.Const(*st.FindFunction("x"));
  solver.ForceDecision(Assignment{x, Value::Rat(5)}, "LRA");
  EXPECT_EQ(solver.Step(), Transition::kConflict);
  ASSERT_TRUE(solver.conflict());
  EXPECT_EQ(solver.conflict()->elems.size(), 3u);
  EXPECT_EQ(solver.Step(), Transition::kUndo);
  SolveResult r = solver.Solve();
  EXPECT_EQ(r.status, Status::kUnsat);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(CheckProof(*r.proof, s.problem).accepted);
  std::vector<std::string> lines = Lines(trace.str());
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "1\tdecide\tLRA\tx<-5\t1\t-");
  EXPECT_EQ(lines[1], "2\tconflict\tLRA\t(< x z)<-false\t1\t3");
  EXPECT_EQ(lines[2], "3\tundo\tLRA\tx<-5\t0\t-");
  EXPECT_EQ(lines[3], "4\tdeduce\tLRA\t(< y z)<-true\t0\t-");
}

TEST(KernelTest, ModelsFollowTheDecisionPolicies) {
  Script bool_only = ParseScript("(declare-const A Bool)(assert A)(check-sat)");
  SolveResult r = Solve(bool_only.problem, Debug());
  ASSERT_EQ(r.status, Status::kSat);
  EXPECT_EQ(ModelValue(r, *bool_only.problem.store, "A"), Value::Bool(true));

  Script euf = ParseScript(
      "(declare-sort U 0)(declare-const a U)(declare-const b U)"
      "(assert (not (= a b)))(check-sat)");
  r = Solve(euf.problem, Debug());
  ASSERT_EQ(r.status, Status::kSat);
  SortId u = *euf.problem.store->FindSort("U");
  EXPECT_EQ(ModelValue(r, *euf.problem.store, "a"), Value::Abstract(u, 0));
  EXPECT_EQ(ModelValue(r, *euf.problem.store, "b"), Value::Abstract(u, 1));

  Script lra = ParseScript("(declare-const x Real)(assert (< 0 x))(check-sat)");
  r = Solve(lra.problem, Debug());
  ASSERT_EQ(r.status, Status::kSat);
  EXPECT_EQ(ModelValue(r, *lra.problem.store, "x"), Value::Rat(1));
}

TEST(KernelTest, ConflictingDuplicateInputs) {
  Script b = ParseScript(
      "(declare-const A Bool)(assign A true)(assign A false)(check-sat)");
  SolveResult r = Solve(b.problem, Debug());
  ASSERT_EQ(r.status, Status::kUnsat);
  EXPECT_TRUE(CheckProof(*r.proof, b.problem).accepted);

  Script x = ParseScript(
      "(declare-const x Real)(assign x 3)(assign x 4)(check-sat)");
  r = Solve(x.problem, Debug());
  ASSERT_EQ(r.status, Status::kUnsat);
  EXPECT_TRUE(CheckProof(*r.proof, x.problem).accepted);
  EXPECT_EQ(r.refuted, MakeAssignmentSet(x.problem.inputs));

  Script lcf = ParseScript(
      "(declare-sort U 0)(declare-const a U)"
      "(assign a (abs U 0))(assign a (abs U 1))(check-sat)");
  r = Solve(lcf.problem, Debug(ProofMode::kLcf));
  ASSERT_EQ(r.status, Status::kUnsat);
  ASSERT_TRUE(r.theorem);
  EXPECT_TRUE(r.theorem->judgement().unsat);
}

TEST(KernelTest, StepLimitGivesUnknown) {
  Script s = ParseScript(
      "(declare-const A Bool)(declare-const B Bool)(assert (or A B))"
      "(check-sat)");
  SolverConfig c = Debug();
  c.max_steps = 1;
  SolveResult r = Solve(s.problem, c);
  EXPECT_EQ(r.status, Status::kUnknown);
  EXPECT_FALSE(r.reason.empty());
}

TEST(KernelTest, IllSortedInputIsRejected) {
  auto store = std::make_shared<TermStore>();
  TermId x = store->Const(store->DeclareFunction("x", {}, store->rat_sort()));
  Problem p{store, {Assignment{x, Value::Bool(true)}}};
  EXPECT_THROW(Solve(p, Debug()), Error);
}

TEST(KernelTest, TraceLinesAreWellFormed) {
  Script s = ParseScript(GenerateScript(Family::kLra, 3, 4));
  std::ostringstream trace;
  SolverConfig c = Debug();
  c.trace = &trace;
  Solve(s.problem, c);
  static const std::vector<std::string> kRules = {
      "decide", "deduce", "conflict", "resolve", "backjump", "undo", "fail"};
  long step = 0;
  for (const std::string& line : Lines(trace.str())) {
    std::vector<std::string> f;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, '\t');) f.push_back(cell);
    ASSERT_EQ(f.size(), 6u) << line;
    EXPECT_GT(std::stol(f[0]), step);
    step = std::stol(f[0]);
    EXPECT_NE(std::find(kRules.begin(), kRules.end(), f[1]), kRules.end());
  }
}

// Every Unsat verdict refutes a subset of the inputs, and all three proof
// modes agree.
TEST(KernelTest, RandomProblemsAgreeAcrossModes) {
  for (Family family : {Family::kBool, Family::kLra, Family::kEuf}) {
    for (int k = 0; k < 40; ++k) {
      Script s = ParseScript(GenerateScript(family, 99, k));
      SolveResult terms = Solve(s.problem, Debug(ProofMode::kProofTerms));
      SolveResult none = Solve(s.problem, Debug(ProofMode::kNone));
      SolveResult lcf = Solve(s.problem, Debug(ProofMode::kLcf));
      EXPECT_EQ(terms.status, none.status);
      EXPECT_EQ(terms.status, lcf.status);
      EXPECT_EQ(lcf.stats.lcf_bound_violations, 0);
      if (terms.status != Status::kUnsat) continue;
      for (const Assignment& a : terms.refuted) {
        EXPECT_NE(std::find(s.problem.inputs.begin(), s.problem.inputs.end(), a),
                  s.problem.inputs.end());
      }
      EXPECT_EQ(lcf.theorem->judgement().hyps, terms.refuted);
    }
  }
}

}  // namespace
}  // namespace cdsat
