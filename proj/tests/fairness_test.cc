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


#include "xfair/fairness.h"

#include "gtest/gtest.h"
#include "oracles.h"
#include "xfair/families.h"
#include "xfair/rng.h"

namespace xfair {
namespace {

constexpr LabelId kDeny = 0;
constexpr LabelId kGrant = 1;
constexpr uint64_t kIncome = 0b1000;

Transformation Set(std::vector<std::pair<int, bool>> targets) {
  return *Transformation::Create(4, targets);
}

Classifier IncomeOnly() {
  TruthTable t;
  for (int w = 0; w < 16; ++w) t.entries.push_back((w >> 3) & 1);
  return *Classifier::Create(*FeatureSpace::Create({"income_high", "privileged",
                                                    "fraud", "savings"}),
                             {"deny", "grant"}, t);
}

TEST(PrejudicialFactorTest, SetsValues) {
  const PrejudicialFactor p = PrivilegeFactor(BankLoan4());
  EXPECT_EQ(p.Apply(World(4, 0b1000)), World(4, 0b1100));
  EXPECT_EQ(p.Apply(World(4, 0b1100)), World(4, 0b1100));
  EXPECT_TRUE(p.Fixes(World(4, 0b0100)));
  EXPECT_FALSE(p.Fixes(World(4, 0b1000)));
  EXPECT_FALSE(PrejudicialFactor::Create("empty", Transformation(LiteralSet(4)))
                   .ok());
}

TEST(BiasedDependencyTest, BankLoanSavings) {
  const Classifier c = BankLoan4();
  auto w = BiasedDependency(c, PrivilegeFactor(c), World(4, 0), 4);
  ASSERT_TRUE(w.ok());
  ASSERT_TRUE(w->has_value());
  EXPECT_EQ((*w)->delta.mask(), 0b0001u);
  EXPECT_EQ((*w)->eta, kDeny);
  EXPECT_EQ((*w)->pi, kGrant);
}

TEST(BiasedDependencyTest, NoneWhenFactorIrrelevant) {
  const Classifier c = IncomeOnly();
  auto w = BiasedDependency(c, PrivilegeFactor(c), World(4, 0), 4);
  ASSERT_TRUE(w.ok());
  EXPECT_FALSE(w->has_value());
}

TEST(BiasedDependencyTest, WitnessesAreSound) {
  Rng rng(201);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(5));
    const Classifier c = RandomTruthTable(n, rng);
    const int f = static_cast<int>(rng.Below(n));
    const auto p = *PrejudicialFactor::Create(
        "p", *Transformation::Create(n, {{f, rng.Coin()}}));
    const World x(n, rng.Below(uint64_t{1} << n));
    auto w = BiasedDependency(c, p, x, n);
    ASSERT_TRUE(w.ok());
    bool exists = false;
    for (uint64_t m = 1; m < (uint64_t{1} << n); ++m) {
      const World dx = x.Xor(m);
      const LabelId a = c.Predict(x), b = c.Predict(dx);
      const LabelId pa = c.Predict(p.Apply(x)), pb = c.Predict(p.Apply(dx));
      if (a == b && pa == pb && a != pa) exists = true;
    }
    EXPECT_EQ(w->has_value(), exists);
    if (!w->has_value()) continue;
    const World dx = (*w)->delta.Apply(x);
    EXPECT_EQ(c.Predict(x), (*w)->eta);
    EXPECT_EQ(c.Predict(dx), (*w)->eta);
    EXPECT_EQ(c.Predict(p.Apply(x)), (*w)->pi);
    EXPECT_EQ(c.Predict(p.Apply(dx)), (*w)->pi);
    EXPECT_NE((*w)->eta, (*w)->pi);
  }
}

std::vector<World> Cube(int n) {
  std::vector<World> out;
  for (World w : WorldRange(n)) out.push_back(w);
  return out;
}

TEST(ImplicitlyDefinableTest, PrivilegeAtom) {
  const Classifier c = BankLoan4();
  auto d = ImplicitlyDefinable(c, PrivilegeFactor(c), Cube(4));
  ASSERT_TRUE(d.ok());
  ASSERT_TRUE(d->formula.has_value());
  EXPECT_EQ(d->formula->ToString(c), "privileged");
  EXPECT_EQ(d->size, 1);
  EXPECT_FALSE(d->degenerate);
}

TEST(ImplicitlyDefinableTest, TwoDimensionFactor) {
  const Classifier c = BankLoan4();
  const auto p = *PrejudicialFactor::Create("pair", Set({{0, true}, {1, true}}));
  auto d = ImplicitlyDefinable(c, p, Cube(4));
  ASSERT_TRUE(d.ok());
  ASSERT_TRUE(d->formula.has_value());
  EXPECT_EQ(d->formula->ToString(c), "income_high & privileged");
}

TEST(ImplicitlyDefinableTest, SingleWorldIsDegenerate) {
  const Classifier c = BankLoan4();
  auto d = ImplicitlyDefinable(c, PrivilegeFactor(c), {World(4, 0b0100)});
  ASSERT_TRUE(d.ok());
  EXPECT_TRUE(d->degenerate);
  ASSERT_TRUE(d->formula.has_value());
  EXPECT_TRUE(d->formula->Holds(World(4, 0b0100), c));
  EXPECT_FALSE(ImplicitlyDefinable(c, PrivilegeFactor(c), {}).ok());
}

TEST(ImplicitlyDefinableTest, FormulaMatchesPopulation) {
  Rng rng(211);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(3));
    const Classifier c = RandomTruthTable(n, rng);
    const auto p = *PrejudicialFactor::Create(
        "p", Transformation(LiteralSet(n, 1 + rng.Below(FullMask(n)),
                                       rng.Next())));
    std::vector<World> population;
    for (World w : WorldRange(n)) {
      if (rng.Coin()) population.push_back(w);
    }
    if (population.empty()) continue;
    auto d = ImplicitlyDefinable(c, p, population);
    ASSERT_TRUE(d.ok());
    if (!d->formula) continue;
    EXPECT_LE(d->size, kMaxDefinabilitySize);
    EXPECT_EQ(d->size, d->formula->NodeCount());
    for (const World& w : population) {
      EXPECT_EQ(d->formula->Holds(w, c), p.Fixes(w));
    }
  }
}

TEST(ConundrumSpecTest, Validation) {
  EXPECT_FALSE(ConundrumSpec::Incompleteness(4, 0b1111).ok());
  EXPECT_TRUE(ConundrumSpec::Incompleteness(4, 0).ok());
  EXPECT_FALSE(ConundrumSpec::Mistake(4, 0, LiteralSet(4)).ok());
  EXPECT_FALSE(
      ConundrumSpec::Mistake(4, kIncome, LiteralSet(4, 0b0100, 0)).ok());
  auto ci = ConundrumSpec::Incompleteness(4, kIncome);
  ASSERT_TRUE(ci.ok());
  EXPECT_EQ(ci->unattended(), 0b0111u);
  EXPECT_EQ(ci->Name(), "CI");
}

TEST(CheckTest, Incompleteness) {
  const Classifier c = BankLoan4();
  const World focal(4, 0);
  const auto spec = *ConundrumSpec::Incompleteness(4, kIncome);
  EXPECT_TRUE(CheckCI(c, focal, kGrant, spec, {Set({{1, true}})}).satisfied);
  EXPECT_FALSE(CheckCI(c, focal, kGrant, spec, {Set({{0, true}})}).satisfied);
  EXPECT_FALSE(CheckCI(c, focal, kGrant, spec, {}).satisfied);
}

TEST(CheckTest, Mistake) {
  const Classifier c = BankLoan4();
  const World focal(4, 0);
  const auto spec =
      *ConundrumSpec::Mistake(4, kIncome, LiteralSet(4, kIncome, 0));
  EXPECT_TRUE(CheckCM(c, focal, kGrant, spec, {Set({{0, true}})}).satisfied);
  const ConstraintVerdict wrong =
      CheckCM(c, focal, kGrant, spec, {Set({{1, true}})});
  EXPECT_FALSE(wrong.satisfied);
  EXPECT_EQ(wrong.diagnostic, "belief unconfirmable");
}

TEST(CheckTest, Bias) {
  const Classifier c = BankLoan4();
  const World focal(4, 0);
  const std::vector<PrejudicialFactor> factors = {PrivilegeFactor(c)};
  EXPECT_TRUE(CheckCB(c, focal, kGrant, factors, {Set({{1, true}})}).satisfied);
  EXPECT_FALSE(
      CheckCB(c, focal, kGrant, factors, {Set({{0, true}})}).satisfied);
  EXPECT_TRUE(CheckCB(c, focal, kGrant, {}, {}).satisfied);
}

TEST(FairAdequateSetTest, BankLoanIncompleteness) {
  const Classifier c = BankLoan4();
  auto set = ComputeFairAdequateSet(c, World(4, 0), kGrant, 4,
                                    *ConundrumSpec::Incompleteness(4, kIncome),
                                    {PrivilegeFactor(c)});
  ASSERT_TRUE(set.ok());
  EXPECT_EQ(set->deltas, std::vector<Transformation>{Set({{1, true}})});
  ASSERT_EQ(set->certificates.size(), 2u);
  EXPECT_EQ(set->certificates[0].constraint, "CI");
  EXPECT_EQ(set->certificates[1].constraint, "CB:privilege");
  EXPECT_TRUE(set->overdetermination.overdetermined());
}

TEST(FairAdequateSetTest, BankLoanMistake) {
  const Classifier c = BankLoan4();
  auto set = ComputeFairAdequateSet(
      c, World(4, 0), kGrant, 4,
      *ConundrumSpec::Mistake(4, kIncome, LiteralSet(4, kIncome, 0)),
      {PrivilegeFactor(c)});
  ASSERT_TRUE(set.ok());
  EXPECT_EQ(set->deltas,
            (std::vector<Transformation>{Set({{0, true}}), Set({{1, true}})}));
}

TEST(FairAdequateSetTest, InfeasibleNamesConstraint) {
  const Classifier c = BankLoan4();
  auto zero = ComputeFairAdequateSet(
      c, World(4, 0), kGrant, 0, *ConundrumSpec::Incompleteness(4, kIncome),
      {PrivilegeFactor(c)});
  EXPECT_EQ(zero.status().code(), absl::StatusCode::kFailedPrecondition);
  const auto unprivileged = *PrejudicialFactor::Create("unprivileged",
                                                       Set({{1, false}}));
  const auto fraud = *PrejudicialFactor::Create("fraud", Set({{2, true}}));
  auto cb = ComputeFairAdequateSet(c, World(4, 0), kGrant, 4,
                                   *ConundrumSpec::Incompleteness(4, kIncome),
                                   {unprivileged, fraud});
  ASSERT_FALSE(cb.ok());
  EXPECT_NE(cb.status().message().find("CB:fraud"), std::string::npos);
}

TEST(FairAdequateSetTest, RandomInstancesReverify) {
  Rng rng(223);
  int feasible = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(5));
    const Classifier c = RandomTruthTable(n, rng);
    FairnessInstance in;
    if (!RandomFairnessInstance(c, rng, 0, 3, in)) continue;
    auto set = ComputeFairAdequateSet(c, in.focal, in.target, in.radius,
                                      in.spec, in.factors);
    const int constraints = 1 + static_cast<int>(in.factors.size());
    std::vector<bool> possible(constraints, false);
    for (uint64_t m = 1; m < (uint64_t{1} << n); ++m) {
      if (oracle::Dist(m, 0) > in.radius) continue;
      for (int j = 0; j < constraints; ++j) {
        possible[j] =
            possible[j] || oracle::Discharges(c, in, j, in.focal.bits() ^ m);
      }
    }
    const bool expect_feasible =
        std::find(possible.begin(), possible.end(), false) == possible.end();
    ASSERT_EQ(set.ok(), expect_feasible) << set.status();
    if (!set.ok()) {
      EXPECT_EQ(set.status().code(), absl::StatusCode::kFailedPrecondition);
      continue;
    }
    ++feasible;
    auto covered = [&](const std::vector<Transformation>& deltas, int j) {
      for (const Transformation& d : deltas) {
        if (oracle::Discharges(c, in, j, d.Apply(in.focal).bits())) return true;
      }
      return false;
    };
    for (const Transformation& d : set->deltas) {
      EXPECT_LE(d.size(), in.radius);
      EXPECT_EQ(c.Predict(d.Apply(in.focal)), in.target);
    }
    for (int j = 0; j < constraints; ++j) {
      EXPECT_TRUE(covered(set->deltas, j));
      EXPECT_TRUE(set->certificates[j].satisfied);
    }
    const ConstraintVerdict first =
        in.spec.kind() == ConundrumKind::kCI
            ? CheckCI(c, in.focal, in.target, in.spec, set->deltas)
            : CheckCM(c, in.focal, in.target, in.spec, set->deltas);
    EXPECT_TRUE(first.satisfied);
    EXPECT_TRUE(
        CheckCB(c, in.focal, in.target, in.factors, set->deltas).satisfied);
    for (size_t i = 0; i < set->deltas.size(); ++i) {
      std::vector<Transformation> rest = set->deltas;
      rest.erase(rest.begin() + i);
      bool all = true;
      for (int j = 0; j < constraints; ++j) all = all && covered(rest, j);
      EXPECT_FALSE(all);
    }
  }
  EXPECT_GT(feasible, 50);
}

}  // namespace
}  // namespace xfair
