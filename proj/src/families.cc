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

#include "xfair/families.h"

#include <set>

#include "absl/strings/str_cat.h"

namespace xfair {
namespace {

const std::vector<std::string>& BinaryLabels() {
  static const auto* labels = new std::vector<std::string>{"deny", "grant"};
  return *labels;
}

Classifier MustCreate(FeatureSpace space, std::vector<std::string> labels,
                      Classifier::Repr repr) {
  absl::StatusOr<Classifier> c =
      Classifier::Create(std::move(space), std::move(labels), std::move(repr));
  return *std::move(c);
}

std::vector<std::string> LabelNames(int num_labels) {
  if (num_labels == 2) return BinaryLabels();
  std::vector<std::string> out;
  for (int i = 0; i < num_labels; ++i) out.push_back(absl::StrCat("y", i));
  return out;
}

}  // namespace

Classifier BankLoan4() {
  FeatureSpace space =
      *FeatureSpace::Create({"income_high", "privileged", "fraud", "savings"});
  LabelRules rules;
  rules.default_label = 0;
  rules.rules.push_back(
      {1, {*LiteralSet::Create(4, {{0, true}, {2, false}}),
           *LiteralSet::Create(4, {{1, true}, {2, false}})}});
  return MustCreate(std::move(space), BinaryLabels(), std::move(rules));
}

PrejudicialFactor PrivilegeFactor(const Classifier& c) {
  const int privileged = *c.space().IndexOf("privileged");
  return *PrejudicialFactor::Create(
      "privilege", *Transformation::Create(c.width(), {{privileged, true}}));
}

FeatureSpace GenericSpace(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(absl::StrCat("x", i));
  return *FeatureSpace::Create(std::move(names));
}

std::vector<Classifier> AllBooleanFunctions(int n) {
  std::vector<Classifier> out;
  const int worlds = 1 << n;
  const uint64_t functions = uint64_t{1} << worlds;
  for (uint64_t f = 0; f < functions; ++f) {
    TruthTable table;
    for (int w = 0; w < worlds; ++w) {
      table.entries.push_back(static_cast<LabelId>((f >> w) & 1));
    }
    out.push_back(MustCreate(GenericSpace(n), BinaryLabels(), std::move(table)));
  }
  return out;
}

Classifier RandomTruthTable(int n, Rng& rng, int num_labels) {
  TruthTable table;
  for (uint64_t w = 0; w < (uint64_t{1} << n); ++w) {
    table.entries.push_back(static_cast<LabelId>(rng.Below(num_labels)));
  }
  return MustCreate(GenericSpace(n), LabelNames(num_labels), std::move(table));
}

Classifier RandomDecisionTree(int n, Rng& rng, int max_depth) {
  DecisionTree tree;
  auto build = [&](auto&& self, uint64_t used, int depth) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const bool leaf = depth >= max_depth || used == FullMask(n) ||
                      (depth > 0 && rng.Chance(1, 4));
    if (leaf) {
      tree.nodes[id].label = static_cast<LabelId>(rng.Below(2));
      return id;
    }
    int feature = static_cast<int>(rng.Below(n));
    while (used & FeatureBit(n, feature)) feature = (feature + 1) % n;
    const uint64_t next = used | FeatureBit(n, feature);
    const int if_true = self(self, next, depth + 1);
    const int if_false = self(self, next, depth + 1);
    tree.nodes[id].feature = feature;
    tree.nodes[id].if_true = if_true;
    tree.nodes[id].if_false = if_false;
    return id;
  };
  tree.root = build(build, 0, 0);
  return MustCreate(GenericSpace(n), BinaryLabels(), std::move(tree));
}

Classifier RandomRules(int n, Rng& rng, int num_terms) {
  LabelRules rules;
  rules.default_label = static_cast<LabelId>(rng.Below(2));
  for (int t = 0; t < num_terms; ++t) {
    LiteralSet term(n);
    const int size = 1 + static_cast<int>(rng.Below(std::min(n, 3)));
    for (int k = 0; k < size; ++k) {
      term = term.With(static_cast<int>(rng.Below(n)), rng.Coin());
    }
    rules.rules.push_back({static_cast<LabelId>(rng.Below(2)), {term}});
  }
  return MustCreate(GenericSpace(n), BinaryLabels(), std::move(rules));
}

bool RandomFairnessInstance(const Classifier& c, Rng& rng, int min_factors,
                            int max_factors, FairnessInstance& out) {
  const int n = c.width();
  std::set<LabelId> image;
  for (World w : WorldRange(n)) image.insert(c.Predict(w));
  if (image.size() < 2) return false;
  const uint64_t worlds = uint64_t{1} << n;
  out.focal = World(n, rng.Below(worlds));
  const LabelId focal_label = c.Predict(out.focal);
  std::vector<LabelId> targets;
  for (LabelId y : image) {
    if (y != focal_label) targets.push_back(y);
  }
  out.target = targets[rng.Below(targets.size())];
  out.radius = 1 + static_cast<int>(rng.Below(n));
  if (rng.Coin()) {
    uint64_t attended = rng.Below(worlds);
    if (attended == FullMask(n)) attended &= ~FeatureBit(n, 0);
    out.spec = *ConundrumSpec::Incompleteness(n, attended);
  } else {
    const uint64_t mistaken = 1 + rng.Below(worlds - 1);
    out.spec = *ConundrumSpec::Mistake(
        n, mistaken, LiteralSet(n, mistaken, out.focal.bits()));
  }
  out.factors.clear();
  const int count =
      min_factors + static_cast<int>(rng.Below(max_factors - min_factors + 1));
  for (int i = 0; i < count; ++i) {
    const int feature = static_cast<int>(rng.Below(n));
    const bool value = rng.Coin();
    out.factors.push_back(*PrejudicialFactor::Create(
        absl::StrCat(c.space().name(feature), value ? ":=1" : ":=0"),
        *Transformation::Create(n, {{feature, value}})));
  }
  return true;
}

ScalingInstance ScalingFamily(int k) {
  std::vector<std::string> names = {"income_high", "privileged", "fraud"};
  for (int i = 1; i <= k; ++i) names.push_back(absl::StrCat("noise_", i));
  const int n = static_cast<int>(names.size());
  LabelRules rules;
  rules.default_label = 0;
  rules.rules.push_back({1,
                         {*LiteralSet::Create(n, {{0, true}, {2, false}}),
                          *LiteralSet::Create(n, {{1, true}, {2, false}})}});
  ScalingInstance out{
      MustCreate(*FeatureSpace::Create(std::move(names)), BinaryLabels(),
                 std::move(rules)),
      {}};
  out.instance.focal = World(n, 0);
  out.instance.target = 1;
  out.instance.radius = n;
  out.instance.spec = *ConundrumSpec::Incompleteness(n, FeatureBit(n, 0));
  out.instance.factors = {PrivilegeFactor(out.classifier)};
  return out;
}

}  // namespace xfair
