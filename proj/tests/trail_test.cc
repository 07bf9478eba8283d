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

#include "cdsat/error.h"
#include "cdsat/trail.h"
#include "gtest/gtest.h"

namespace cdsat {
namespace {

class TrailTest : public ::testing::Test {
 protected:
  TrailTest() {
    for (int i = 0; i < 8; ++i) {
      p_.push_back(s_.Const(
          s_.DeclareFunction("p" + std::to_string(i), {}, s_.bool_sort())));
    }
    x_ = s_.Const(s_.DeclareFunction("x", {}, s_.rat_sort()));
  }

  Assignment T(int i) { return BoolAssignment(p_[i], true); }
  static Provenance Ded(std::vector<int> premises) {
    return Provenance::Deduction("Bool", TheoryId::kBool, "test",
                                 std::move(premises));
  }
  static Provenance Dec() { return Provenance::Decision("Bool", TheoryId::kBool); }

  TermStore s_;
  std::vector<TermId> p_;
  TermId x_;
};

TEST_F(TrailTest, LevelLaws) {
  Trail t;
  EXPECT_EQ(t.item(t.Append(T(0), Dec())).level, 1);

  Trail u;
  u.Append(T(0), Provenance::Input(0));
  u.Append(T(1), Dec());
  u.Append(T(2), Dec());
  EXPECT_EQ(u.max_level(), 2);
  int d = u.Append(Assignment{x_, Value::Rat(5)},
                   Provenance::Decision("LRA", TheoryId::kLra));
  EXPECT_EQ(u.item(d).level, 3);
  int ded = u.Append(T(3), Ded({0, 2}));
  EXPECT_EQ(u.item(ded).level, 2);
}

TEST_F(TrailTest, AppendErrors) {
  Trail t;
  t.Append(T(0), Provenance::Input(0));
  try {
    t.Append(BoolAssignment(p_[0], false), Dec());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTermAlreadyAssigned);
  }
  try {
    t.Append(T(1), Ded({4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJustificationOutOfRange);
  }
  try {
    t.Append(Assignment{x_, Value::Rat(1)},
             Provenance::Deduction("LRA", TheoryId::kLra, "test", {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonBooleanDeduction);
  }
}

TEST_F(TrailTest, RestrictDropsHigherLevels) {
  Trail t;
  t.Append(T(0), Provenance::Input(0));
  t.Append(T(1), Dec());
  t.Append(T(2), Ded({1}));
  t.Append(T(3), Dec());
  std::vector<int> remap = t.RestrictTo(1);
  EXPECT_EQ(t.size(), 3);
  EXPECT_EQ(remap, (std::vector<int>{0, 1, 2, -1}));
  EXPECT_FALSE(t.Lookup(p_[3]));
}

TEST_F(TrailTest, LateLowLevelDeductionsSurvive) {
  Trail t;
  t.Append(T(0), Provenance::Input(0));
  t.Append(T(1), Dec());
  t.Append(T(2), Dec());
  int late = t.Append(T(3), Ded({0}));
  ASSERT_EQ(t.item(late).level, 0);
  std::vector<int> remap = t.RestrictTo(0);
  EXPECT_EQ(t.size(), 2);
  EXPECT_EQ(remap[late], 1);
  EXPECT_EQ(t.item(1).assignment, T(3));
  EXPECT_EQ(t.item(1).provenance.justification, std::vector<int>{0});
  EXPECT_EQ(t.CheckInvariants(), "");
}

TEST_F(TrailTest, RestrictToMaxLevelIsIdentity) {
  Trail t;
  t.Append(T(0), Dec());
  t.Append(T(1), Ded({0}));
  t.RestrictTo(t.max_level());
  EXPECT_EQ(t.size(), 2);
}

TEST_F(TrailTest, Queries) {
  Trail t;
  t.Append(T(0), Provenance::Input(0));
  EXPECT_TRUE(t.FlipPresent(BoolAssignment(p_[0], false)));
  EXPECT_FALSE(t.FlipPresent(T(0)));
  EXPECT_EQ(t.Lookup(p_[5]), nullptr);
  for (int i = 1; i < 6; ++i) t.Append(T(i), Provenance::Input(i));
  std::vector<int> e = {2, 5, 3};
  EXPECT_EQ(t.LatestIn(e), 5);
  try {
    t.LatestIn(std::vector<int>{});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kEmptyConflict);
  }
}

TEST_F(TrailTest, MakeConflictSortsAndMeasures) {
  Trail t;
  t.Append(T(0), Provenance::Input(0));
  t.Append(T(1), Dec());
  t.Append(T(2), Dec());
  ConflictState c = MakeConflict(t, {2, 0, 2}, 7);
  EXPECT_EQ(c.elems, (std::vector<int>{0, 2}));
  EXPECT_EQ(c.level, 2);
  EXPECT_EQ(c.proof, 7);
}

// Random trails: inputs, decisions and deductions over random earlier
// premises.
Trail RandomTrail(const std::vector<TermId>& atoms, std::mt19937_64& rng) {
  Trail t;
  for (size_t i = 0; i < atoms.size(); ++i) {
    Assignment a = BoolAssignment(atoms[i], rng() % 2);
    int kind = t.size() == 0 ? rng() % 2 : rng() % 3;
    if (kind == 0) {
      t.Append(a, Provenance::Input(static_cast<int>(i)));
    } else if (kind == 1) {
      t.Append(a, Provenance::Decision("Bool", TheoryId::kBool));
    } else {
      std::vector<int> premises;
      for (int k = 0, n = static_cast<int>(rng() % 3) + 1; k < n; ++k) {
        premises.push_back(static_cast<int>(rng() % t.size()));
      }
      t.Append(a, Provenance::Deduction("Bool", TheoryId::kBool, "test",
                                        premises));
    }
  }
  return t;
}

// Level laws recomputed from scratch.
void ExpectLevelLaws(const Trail& t) {
  int max_level = 0;
  for (int i = 0; i < t.size(); ++i) {
    const TrailItem& item = t.item(i);
    int want = 0;
    if (item.is_decision()) {
      want = max_level + 1;
    } else if (item.is_deduction()) {
      for (int j : item.provenance.justification) {
        ASSERT_LT(j, i);
        want = std::max(want, t.item(j).level);
      }
    }
    EXPECT_EQ(item.level, want) << "item " << i;
    max_level = std::max(max_level, item.level);
  }
  EXPECT_EQ(t.max_level(), max_level);
}

TEST_F(TrailTest, RandomTrailsKeepLevelLawsUnderRestriction) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    Trail t = RandomTrail(p_, rng);
    ExpectLevelLaws(t);
    EXPECT_EQ(t.CheckInvariants(), "");
    t.RestrictTo(static_cast<int>(rng() % (t.max_level() + 1)));
    ExpectLevelLaws(t);
    EXPECT_EQ(t.CheckInvariants(), "");
  }
}

TEST_F(TrailTest, RestrictionsComposeAsMinimum) {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 300; ++round) {
    std::mt19937_64 fork = rng;
    Trail a = RandomTrail(p_, rng);
    Trail b = RandomTrail(p_, fork);
    int m = static_cast<int>(rng() % (a.max_level() + 1));
    int n = static_cast<int>(rng() % (a.max_level() + 1));
    a.RestrictTo(m);
    a.RestrictTo(n);
    b.RestrictTo(std::min(m, n));
    ASSERT_EQ(a.size(), b.size());
    for (int i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.item(i).assignment, b.item(i).assignment);
      EXPECT_EQ(a.item(i).level, b.item(i).level);
      EXPECT_EQ(a.item(i).provenance.justification,
                b.item(i).provenance.justification);
    }
  }
}

}  // namespace
}  // namespace cdsat
