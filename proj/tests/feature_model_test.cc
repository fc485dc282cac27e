// Copyright 2026 The xfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "xfair/feature_model.h"

#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "xfair/families.h"
#include "xfair/rng.h"

namespace xfair {
namespace {

TEST(FeatureSpaceTest, RejectsDuplicateAndEmptyNames) {
  EXPECT_FALSE(FeatureSpace::Create({"a", "a"}).ok());
  EXPECT_FALSE(FeatureSpace::Create({"a", ""}).ok());
  EXPECT_FALSE(FeatureSpace::Create({}).ok());
  auto space = FeatureSpace::Create({"a", "b"});
  ASSERT_TRUE(space.ok());
  EXPECT_EQ(space->IndexOf("b"), 1);
  EXPECT_FALSE(space->IndexOf("c").has_value());
}

TEST(FeatureSpaceTest, WidthCap) {
  std::vector<std::string> names;
  for (int i = 0; i <= MaxFeatures(); ++i) names.push_back("f" + std::to_string(i));
  EXPECT_FALSE(FeatureSpace::Create(names).ok());
  names.pop_back();
  EXPECT_TRUE(FeatureSpace::Create(names).ok());
}

TEST(WorldTest, FeatureZeroIsMostSignificant) {
  auto w = World::FromString("1000");
  ASSERT_TRUE(w.ok());
  EXPECT_EQ(w->bits(), 8u);
  EXPECT_TRUE(w->Get(0));
  EXPECT_FALSE(w->Get(3));
  EXPECT_EQ(w->ToString(), "1000");
  EXPECT_FALSE(World::FromString("10x0").ok());
}

TEST(WorldTest, HammingWidthMismatch) {
  EXPECT_FALSE(Hamming(World(3, 0), World(4, 0)).ok());
  EXPECT_EQ(*Hamming(World(4, 0b1010), World(4, 0b0110)), 2);
}

TEST(WorldTest, HammingIsAMetric) {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(20));
    const World a(n, rng.Next()), b(n, rng.Next()), c(n, rng.Next());
    EXPECT_EQ(Distance(a, a), 0);
    EXPECT_EQ(Distance(a, b), Distance(b, a));
    EXPECT_EQ(Distance(a, b) == 0, a == b);
    EXPECT_LE(Distance(a, c), Distance(a, b) + Distance(b, c));
    EXPECT_EQ(Distance(a, b), oracle::Dist(a.bits(), b.bits()));
  }
}

TEST(LiteralSetTest, CreateRejectsContradiction) {
  EXPECT_FALSE(LiteralSet::Create(4, {{0, true}, {0, false}}).ok());
  EXPECT_FALSE(LiteralSet::Create(4, {{4, true}}).ok());
  auto l = LiteralSet::Create(4, {{0, true}, {2, false}});
  ASSERT_TRUE(l.ok());
  EXPECT_EQ(l->size(), 2);
  EXPECT_TRUE(l->SatisfiedBy(World(4, 0b1001)));
  EXPECT_FALSE(l->SatisfiedBy(World(4, 0b1010)));
  EXPECT_EQ(l->Complete(World(4, 0b0111)), World(4, 0b1101));
}

TEST(ClassifierTest, BankLoanLabels) {
  const Classifier c = BankLoan4();
  EXPECT_EQ(c.width(), 4);
  EXPECT_EQ(c.labels(), (std::vector<std::string>{"deny", "grant"}));
  const std::set<uint64_t> grants = {0b1000, 0b1001, 0b0100, 0b0101,
                                     0b1100, 0b1101};
  for (World w : WorldRange(4)) {
    EXPECT_EQ(c.Predict(w), grants.count(w.bits()) ? 1 : 0) << w.ToString();
  }
}

TEST(ClassifierTest, ValidatesRepresentation) {
  TruthTable short_table{{0, 1, 0}};
  EXPECT_FALSE(Classifier::Create(GenericSpace(2), {"a", "b"}, short_table).ok());
  TruthTable bad_label{{0, 1, 2, 0}};
  EXPECT_FALSE(Classifier::Create(GenericSpace(2), {"a", "b"}, bad_label).ok());
  TruthTable ok{{0, 1, 1, 0}};
  EXPECT_FALSE(Classifier::Create(GenericSpace(2), {"a"}, ok).ok());
  EXPECT_FALSE(Classifier::Create(GenericSpace(2), {"a", "a"}, ok).ok());
  EXPECT_TRUE(Classifier::Create(GenericSpace(2), {"a", "b"}, ok).ok());

  DecisionTree tree;
  tree.nodes.push_back({5, 1, 2, -1});
  tree.nodes.push_back({-1, -1, -1, 0});
  tree.nodes.push_back({-1, -1, -1, 1});
  EXPECT_FALSE(Classifier::Create(GenericSpace(2), {"a", "b"}, tree).ok());
  tree.nodes[0].feature = 1;
  EXPECT_TRUE(Classifier::Create(GenericSpace(2), {"a", "b"}, tree).ok());
}

TEST(ClassifierTest, EvaluateChecksWidth) {
  const Classifier c = BankLoan4();
  EXPECT_FALSE(Evaluate(c, World(3, 0)).ok());
  EXPECT_EQ(*Evaluate(c, World(4, 0b0100)), 1);
}

TEST(ClassifierTest, RepresentationEquivalence) {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(10));
    const Classifier tree = RandomDecisionTree(n, rng, 5);
    const Classifier rules = RandomRules(n, rng, 4);
    for (const Classifier* c : {&tree, &rules}) {
      const Classifier table = c->ToTruthTable();
      for (World w : WorldRange(n)) {
        ASSERT_EQ(c->Predict(w), table.Predict(w));
        ASSERT_EQ(c->Predict(w), c->Predict(w));
      }
    }
  }
}

TEST(GroundTruthSetTest, ValidatesPoints) {
  const Classifier c = BankLoan4();
  EXPECT_TRUE(GroundTruthSet::Create(c, {{World(4, 12), 1}}).ok());
  EXPECT_FALSE(GroundTruthSet::Create(c, {{World(3, 1), 1}}).ok());
  EXPECT_FALSE(GroundTruthSet::Create(c, {{World(4, 1), 7}}).ok());
}

TEST(EnumerateWorldsTest, CountsAndOrder) {
  auto range = EnumerateWorlds(GenericSpace(10));
  ASSERT_TRUE(range.ok());
  uint64_t count = 0;
  uint64_t expected = 0;
  for (World w : *range) {
    EXPECT_EQ(w.bits(), expected++);
    ++count;
  }
  EXPECT_EQ(count, 1024u);
}

TEST(EnumerateWorldsTest, FullWidth) {
  auto range = EnumerateWorlds(GenericSpace(24));
  ASSERT_TRUE(range.ok());
  uint64_t count = 0;
  for (auto it = range->begin(); it != range->end(); ++it) ++count;
  EXPECT_EQ(count, uint64_t{16777216});
}

}  // namespace
}  // namespace xfair
