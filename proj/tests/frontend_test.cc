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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "cdsat/driver.h"
#include "cdsat/error.h"
#include "cdsat/gen.h"
#include "cdsat/proof_io.h"
#include "cdsat/sexpr.h"
#include "cdsat/smtlib.h"
#include "gtest/gtest.h"

namespace cdsat {
namespace {

namespace fs = std::filesystem;

ErrorCode ParseCode(const std::string& text, int* line = nullptr,
                    int* col = nullptr) {
  try {
    ParseScript(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    if (col) *col = e.column();
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kInternal;
}

TEST(SExprTest, PositionsCommentsAndLiterals) {
  auto es = ReadSExprs("; header\n(a (b \"x y\" |q r|))\n  c");
  ASSERT_EQ(es.size(), 2u);
  EXPECT_EQ(es[0].line, 2);
  EXPECT_EQ(es[0].col, 1);
  EXPECT_EQ(es[0].items[1].items[1].atom, "\"x y\"");
  EXPECT_EQ(es[0].items[1].items[2].atom, "|q r|");
  EXPECT_EQ(es[1].line, 3);
  EXPECT_EQ(es[1].col, 3);
  EXPECT_EQ(SExprToString(es[0]), "(a (b \"x y\" |q r|))");
}

TEST(SExprTest, UnbalancedInputReportsPosition) {
  try {
    ReadSExprs("(a\n  (b)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntaxError);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 1);
  }
  EXPECT_THROW(ReadSExprs(")"), ParseError);
}

TEST(ParserTest, AssertAssignAndEqualityAreDistinctInputs) {
  Script s = ParseScript(
      "(declare-const a Bool)(declare-const b Bool)(declare-const x Real)"
      "(assert (or (not a) b))(assign x 3)(assert (= x 3))");
  const TermStore& st = *s.problem.store;
  ASSERT_EQ(s.problem.inputs.size(), 3u);
  EXPECT_EQ(AssignmentToString(st, s.problem.inputs[0]),
            "(or (not a) b)<-true");
  EXPECT_EQ(AssignmentToString(st, s.problem.inputs[1]), "x<-3");
  EXPECT_EQ(AssignmentToString(st, s.problem.inputs[2]), "(= x 3)<-true");
}

TEST(ParserTest, Desugaring) {
  Script s = ParseScript(
      "(declare-const x Real)(declare-const y Real)(declare-const z Real)"
      "(assert (> x y))(assert (>= x 0.5))(assert (< x y z))"
      "(assert (distinct x y z))(assert (= (- x y z) (/ 3 4)))"
      "(assert (=> (< x 1) (< y 1) (< z 1)))(assert (<= (* 2 x 3) (- 1)))");
  const TermStore& st = *s.problem.store;
  auto text = [&](int i) { return TermToString(st, s.problem.inputs[i].term); };
  EXPECT_EQ(text(0), "(< y x)");
  EXPECT_EQ(text(1), "(<= (/ 1 2) x)");
  EXPECT_EQ(text(2), "(and (< x y) (< y z))");
  EXPECT_EQ(text(3), "(and (not (= x y)) (not (= x z)) (not (= y z)))");
  EXPECT_EQ(text(4), "(= (- (- x y) z) (/ 3 4))");
  EXPECT_EQ(text(5), "(=> (< x 1) (=> (< y 1) (< z 1)))");
  EXPECT_EQ(text(6), "(<= (* (* 2 x) 3) (- 1))");
}

TEST(ParserTest, ValuesAndUninterpretedSorts) {
  Script s = ParseScript(
      "(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)"
      "(declare-const x Real)(assign a (abs U 2))(assign (f a) (abs U 0))"
      "(assign x (- (/ 1 3)))(check-sat)(get-model)(get-proof)(exit)");
  const TermStore& st = *s.problem.store;
  EXPECT_EQ(AssignmentToString(st, s.problem.inputs[0]), "a<-(abs U 2)");
  EXPECT_EQ(AssignmentToString(st, s.problem.inputs[1]), "(f a)<-(abs U 0)");
  EXPECT_EQ(s.problem.inputs[2].value, Value::Rat(Rational(-1, 3)));
  EXPECT_TRUE(s.check_sat && s.get_model && s.get_proof);
}

TEST(ParserTest, ErrorsCarryCodesAndPositions) {
  int line = 0, col = 0;
  EXPECT_EQ(ParseCode("(declare-const x Real)\n(assert (< x q))", &line, &col),
            ErrorCode::kUndeclaredSymbol);
  EXPECT_EQ(line, 2);
  EXPECT_EQ(col, 14);
  EXPECT_EQ(ParseCode("(declare-const x Real)(assert x)"),
            ErrorCode::kSortError);
  EXPECT_EQ(ParseCode("(declare-const p Bool)(assert (< p 1))"),
            ErrorCode::kSortError);
  EXPECT_EQ(ParseCode("(declare-const x Real)(assign x true)"),
            ErrorCode::kSortError);
  EXPECT_EQ(ParseCode("(declare-const x Int)"), ErrorCode::kSortError);
  EXPECT_EQ(ParseCode("(declare-const x Real)(declare-const x Real)"),
            ErrorCode::kSortError);
  EXPECT_EQ(ParseCode("(push 1)"), ErrorCode::kUnsupported);
  EXPECT_EQ(ParseCode("(set-option :produce-proofs true)"),
            ErrorCode::kUnsupported);
  EXPECT_EQ(ParseCode("(check-sat)(check-sat)"), ErrorCode::kUnsupported);
  EXPECT_EQ(ParseCode("(declare-const x Real)(assert (< (* x x) 1))"),
            ErrorCode::kUnsupported);
  EXPECT_EQ(ParseCode("(assert (not true false))"), ErrorCode::kSyntaxError);
  EXPECT_EQ(ParseCode("(assert (and true)"), ErrorCode::kSyntaxError);
}

TEST(ParserTest, PrintedScriptsReparseIdentically) {
  for (Family f : {Family::kBool, Family::kLra, Family::kEuf}) {
    for (int k = 0; k < 60; ++k) {
      std::string printed = PrintScript(ParseScript(GenerateScript(f, 17, k)));
      EXPECT_EQ(PrintScript(ParseScript(printed)), printed);
    }
  }
}

TEST(ParserTest, ModelPrinting) {
  Script s = ParseScript("(declare-const x Real)(declare-const p Bool)");
  const TermStore& st = *s.problem.store;
  TermId x = st.FindFunction("x") ? s.problem.store->Const(*st.FindFunction("x"))
                                  : TermId();
  TermId p = s.problem.store->Const(*st.FindFunction("p"));
  EXPECT_EQ(PrintModel(st, {{x, Value::Rat(Rational(1, 2))},
                            {p, Value::Bool(true)}}),
            "(model (define x (/ 1 2)) (define p true))");
}

TEST(ProofIoTest, CdsatRoundTripIntoAFreshStore) {
  std::string text =
      "(declare-const x Real)(declare-const y Real)(assert (< x y))"
      "(assert (< y x))(check-sat)";
  Script s = ParseScript(text);
  SolveResult r = Solve(s.problem, SolverConfig{});
  ASSERT_EQ(r.status, Status::kUnsat);
  std::string written = WriteCdsatProof(*s.problem.store, *r.proof);
  EXPECT_EQ(written.rfind("(cdsat-pt 1)\n", 0), 0u);

  Script fresh = ParseScript(text);
  RawProof back = ReadCdsatProof(written, *fresh.problem.store);
  EXPECT_TRUE(CheckProof(back, fresh.problem).accepted);
  EXPECT_EQ(WriteCdsatProof(*fresh.problem.store, back).size() > 0, true);
  EXPECT_EQ(back.nodes.size(), r.proof->nodes.size());
}

TEST(ProofIoTest, ResolutionRoundTrip) {
  std::string text =
      "(declare-const x Real)(assign x 3)(assert (or (= x 4) (< x 2)))";
  Script s = ParseScript(text);
  SolveResult r = Solve(s.problem, SolverConfig{});
  ASSERT_EQ(r.status, Status::kUnsat);
  ResolutionProof res = ExportResolution(*r.proof, s.problem);
  std::string written = WriteResolutionProof(*s.problem.store, res);
  Script fresh = ParseScript(text);
  ResolutionProof back = ReadResolutionProof(written, *fresh.problem.store);
  EXPECT_TRUE(ReplayResolution(back, fresh.problem, true).ok);
  EXPECT_EQ(WriteResolutionProof(*fresh.problem.store, back).size(),
            written.size());
}

TEST(ProofIoTest, MalformedFilesAreParseErrors) {
  Script s = ParseScript("(declare-const A Bool)(assert A)");
  TermStore& st = *s.problem.store;
  EXPECT_THROW(ReadCdsatProof("(node 0 (input 0 (0 <- true)))", st), ParseError);
  EXPECT_THROW(ReadCdsatProof("(cdsat-pt 1)\n(node 0 (input 0 (9 <- true)))", st),
               ParseError);
  EXPECT_THROW(ReadResolutionProof("t 0 A\nu 0 *0\n", st), ParseError);
  EXPECT_THROW(ReadResolutionProof("t 0 A\nl 0 Bool x +0\n", st), ParseError);
  EXPECT_EQ(DetectProofFormat("  (cdsat-pt 1)"), ProofFormat::kCdsat);
  EXPECT_EQ(DetectProofFormat("t 0 A"), ProofFormat::kRes);
}

TEST(GenTest, SameSeedSameBytes) {
  for (Family f : {Family::kBool, Family::kLra, Family::kEuf}) {
    EXPECT_EQ(GenerateScript(f, 7, 3), GenerateScript(f, 7, 3));
    EXPECT_NE(GenerateScript(f, 7, 3), GenerateScript(f, 8, 3));
  }
  EXPECT_EQ(FamilyFromName("euf"), Family::kEuf);
  EXPECT_FALSE(FamilyFromName("lia").has_value());
}

TEST(GenTest, FamiliesRespectTheirSizeBounds) {
  for (int k = 0; k < 100; ++k) {
    Script b = ParseScript(GenerateScript(Family::kBool, 1, k));
    EXPECT_LE(b.problem.inputs.size(), 30u);
    Script l = ParseScript(GenerateScript(Family::kLra, 1, k));
    int vars = 0;
    for (const Command& c : l.commands) vars += c.kind == CommandKind::kDeclareConst;
    EXPECT_LE(vars, 5);
  }
}

OracleVerdict OracleOf(const std::string& text) {
  return Oracle(ParseScript(text).problem);
}

TEST(OracleTest, Examples) {
  EXPECT_EQ(OracleOf("(declare-const A Bool)(declare-const B Bool)"
                     "(assert (or A B))(assign A false)"),
            OracleVerdict::kSat);
  EXPECT_EQ(OracleOf("(declare-const x Real)(assert (<= 1 x))(assert (<= x 0))"),
            OracleVerdict::kUnsat);
  EXPECT_EQ(OracleOf("(declare-sort U 0)(declare-fun f (U) U)"
                     "(declare-const a U)(declare-const b U)"
                     "(assert (= a b))(assert (not (= (f a) (f b))))"),
            OracleVerdict::kUnsat);
  EXPECT_EQ(OracleOf("(declare-const x Real)(assign x 3)(assert (= x 3))"),
            OracleVerdict::kSat);
  EXPECT_EQ(OracleOf("(declare-const x Real)(assign x 3)(assert (= x 4))"),
            OracleVerdict::kUnsat);
  EXPECT_EQ(OracleOf("(declare-const x Real)(assert (not (= x 0)))"
                     "(assert (<= x 0))(assert (<= 0 x))"),
            OracleVerdict::kUnsat);
}

TEST(OracleTest, TooManyAtoms) {
  std::string text;
  for (int i = 0; i < 17; ++i) {
    text += "(declare-const p" + std::to_string(i) + " Bool)(assert p" +
            std::to_string(i) + ")";
  }
  try {
    OracleOf(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(OracleTest, VerdictIgnoresInputOrder) {
  std::mt19937_64 rng(4);
  for (Family f : {Family::kBool, Family::kLra, Family::kEuf}) {
    for (int k = 0; k < 40; ++k) {
      Script s = ParseScript(GenerateScript(f, 23, k));
      OracleVerdict want = Oracle(s.problem);
      Problem shuffled = s.problem;
      std::shuffle(shuffled.inputs.begin(), shuffled.inputs.end(), rng);
      EXPECT_EQ(Oracle(shuffled), want);
    }
  }
}

class ToolTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cdsat_tool_" + std::to_string(::testing::UnitTest::GetInstance()
                                               ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  int Run(const std::string& args, const std::string& out = "out.txt") {
    std::string cmd = std::string(CDSAT_BIN) + " " + args + " > " +
                      (dir_ / out).string() + " 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }
  std::string Read(const std::string& name) { return ReadFile((dir_ / name).string()); }

  fs::path dir_;
};

TEST_F(ToolTest, SolveWritesACheckableProof) {
  std::string problem = Write(
      "p.smt2",
      "(declare-const x Real)(assign x 3)(assert (= x 4))(check-sat)(get-proof)");
  std::string proof = (dir_ / "p.pt").string();
  EXPECT_EQ(Run("solve " + problem + " --proof-out " + proof), 0);
  EXPECT_EQ(Read("out.txt"), "unsat\n");
  EXPECT_EQ(Run("check-proof " + problem + " " + proof), 0);
  EXPECT_EQ(Read("out.txt"), "accepted\n");

  std::string text = Read("p.pt");
  text.replace(text.find("(concl (2 <- false))"), 20, "(concl (2 <- true))");
  Write("bad.pt", text);
  EXPECT_EQ(Run("check-proof " + problem + " " + (dir_ / "bad.pt").string()), 0);
  EXPECT_EQ(Read("out.txt").rfind("rejected\nnode 0: ", 0), 0u) << Read("out.txt");
}

TEST_F(ToolTest, SatPrintsTheModel) {
  std::string problem = Write(
      "s.smt2",
      "(declare-const x Real)(assign x 3)(assert (= x 3))(check-sat)(get-model)");
  EXPECT_EQ(Run("solve " + problem), 0);
  EXPECT_EQ(Read("out.txt"), "sat\n(model (define x 3))\n");
}

TEST_F(ToolTest, ExitCodes) {
  std::string bad = Write("bad.smt2", "(declare-const x Real)\n(assert (< x y))");
  EXPECT_EQ(Run("solve " + bad), 1);
  EXPECT_NE(Read("out.txt").find("2:14"), std::string::npos);
  EXPECT_EQ(Run("solve"), 1);
  EXPECT_EQ(Run("solve " + bad + " --mode sideways"), 1);
  std::string ok = Write(
      "ok.smt2",
      "(declare-const A Bool)(declare-const B Bool)(assert (or A B))"
      "(assert (or (not A) B))(assert (or A (not B)))"
      "(assert (or (not A) (not B)))(check-sat)");
  EXPECT_EQ(Run("solve " + ok + " --trace /nonexistent-dir/t.txt"), 1);
  EXPECT_EQ(Run("solve " + ok + " --max-steps 1"), 0);
  EXPECT_EQ(Read("out.txt"), "unknown\n");
}

TEST_F(ToolTest, GenIsReproducibleAndBenchChecksProofs) {
  std::string a = (dir_ / "a").string();
  std::string b = (dir_ / "b").string();
  EXPECT_EQ(Run("gen --seed 7 --family bool --count 5 --out " + a), 0);
  EXPECT_EQ(Run("gen --seed 7 --family bool --count 5 --out " + b), 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(ReadFile(e.path().string()),
              ReadFile((fs::path(b) / e.path().filename()).string()));
  }
  EXPECT_EQ(files, 5);
  std::string csv = (dir_ / "bench.csv").string();
  EXPECT_EQ(Run("bench " + a + " --csv " + csv), 0);
  std::string table = Read("bench.csv");
  EXPECT_EQ(table.rfind(
                "file,verdict,steps,decisions,conflicts,proof_checked,wall_millis\n",
                0),
            0u);
  std::istringstream rows(table);
  std::string row;
  std::getline(rows, row);
  int n = 0;
  while (std::getline(rows, row)) {
    ++n;
    if (row.find(",unsat,") != std::string::npos) {
      EXPECT_NE(row.find(",true,"), std::string::npos) << row;
    }
  }
  EXPECT_EQ(n, 5);
}

TEST(DriverTest, ResolutionOutputAndLcfMode) {
  Script s = ParseScript(
      "(declare-const A Bool)(assert A)(assert (not A))(check-sat)(get-proof)");
  SolverConfig c;
  SolveOutput out = SolveScript(s, c, ProofFormat::kRes, false);
  EXPECT_EQ(out.stdout_text, "unsat\n");
  ProofVerdict v = CheckProofText(s, out.proof_text);
  EXPECT_TRUE(v.accepted) << v.diagnosis;
  c.proof_mode = ProofMode::kLcf;
  out = SolveScript(s, c, ProofFormat::kCdsat, false);
  EXPECT_EQ(out.stdout_text, "unsat\n");
  EXPECT_TRUE(out.proof_text.empty());
  EXPECT_EQ(ProofModeFromName("lcf"), ProofMode::kLcf);
  EXPECT_FALSE(ProofModeFromName("fast").has_value());
}

}  // namespace
}  // namespace cdsat
