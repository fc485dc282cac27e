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

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace xfair {

int MaxFeatures() {
  const char* env = std::getenv("XFAIR_MAX_N");
  int value = 0;
  if (env != nullptr && absl::SimpleAtoi(env, &value) && value > 0) {
    return std::min(value, kAbsoluteMaxFeatures);
  }
  return kDefaultMaxFeatures;
}

std::vector<int> MaskIndices(int width, uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; i < width; ++i) {
    if (mask & FeatureBit(width, i)) out.push_back(i);
  }
  return out;
}

uint64_t IndicesMask(int width, const std::vector<int>& indices) {
  uint64_t mask = 0;
  for (int i : indices) mask |= FeatureBit(width, i);
  return mask;
}

absl::StatusOr<FeatureSpace> FeatureSpace::Create(
    std::vector<std::string> names) {
  if (names.empty()) {
    return absl::InvalidArgumentError("feature space needs at least one feature");
  }
  if (static_cast<int>(names.size()) > MaxFeatures()) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature space has ", names.size(),
                     " features; the cap is ", MaxFeatures()));
  }
  std::set<std::string> seen;
  for (const std::string& name : names) {
    if (name.empty()) {
      return absl::InvalidArgumentError("feature names must be non-empty");
    }
    if (!seen.insert(name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate feature name '", name, "'"));
    }
  }
  return FeatureSpace(std::move(names));
}

std::optional<int> FeatureSpace::IndexOf(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

absl::StatusOr<World> World::FromString(std::string_view text) {
  if (text.empty() || static_cast<int>(text.size()) > kAbsoluteMaxFeatures) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad world width ", text.size()));
  }
  uint64_t bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      return absl::InvalidArgumentError(
          absl::StrCat("world string '", std::string(text), "' must contain only 0/1"));
    }
    bits = (bits << 1) | static_cast<uint64_t>(ch == '1');
  }
  return World(static_cast<int>(text.size()), bits);
}

World World::With(int feature, bool value) const {
  const uint64_t bit = FeatureBit(width_, feature);
  return World(width_, value ? (bits_ | bit) : (bits_ & ~bit));
}

std::string World::ToString() const {
  std::string out(width_, '0');
  for (int i = 0; i < width_; ++i) {
    if (Get(i)) out[i] = '1';
  }
  return out;
}

absl::StatusOr<int> Hamming(const World& a, const World& b) {
  if (a.width() != b.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "width mismatch: ", a.width(), " vs ", b.width()));
  }
  return Distance(a, b);
}

int Distance(const World& a, const World& b) {
  return std::popcount(a.bits() ^ b.bits());
}

absl::StatusOr<LiteralSet> LiteralSet::Create(
    int width, const std::vector<std::pair<int, bool>>& literals) {
  LiteralSet out(width);
  for (const auto& [feature, value] : literals) {
    if (feature < 0 || feature >= width) {
      return absl::InvalidArgumentError(
          absl::StrCat("literal feature index ", feature, " out of range"));
    }
    if (out.Has(feature) && out.Value(feature) != value) {
      return absl::InvalidArgumentError(absl::StrCat(
          "inconsistent literal set: feature ", feature, " is both true and false"));
    }
    out = out.With(feature, value);
  }
  return out;
}

int LiteralSet::size() const { return std::popcount(mask_); }

LiteralSet LiteralSet::With(int feature, bool value) const {
  const uint64_t bit = FeatureBit(width_, feature);
  return LiteralSet(width_, mask_ | bit, value ? (values_ | bit) : (values_ & ~bit));
}

LiteralSet LiteralSet::Without(int feature) const {
  const uint64_t bit = FeatureBit(width_, feature);
  return LiteralSet(width_, mask_ & ~bit, values_ & ~bit);
}

std::vector<std::pair<int, bool>> LiteralSet::Literals() const {
  std::vector<std::pair<int, bool>> out;
  for (int i = 0; i < width_; ++i) {
    if (Has(i)) out.emplace_back(i, Value(i));
  }
  return out;
}

namespace {

absl::Status ValidateTree(const DecisionTree& tree, int width, int num_labels) {
  const int count = static_cast<int>(tree.nodes.size());
  if (tree.root < 0 || tree.root >= count) {
    return absl::InvalidArgumentError("decision tree has no root");
  }
  // Each node may be reached once from the root: rules out cycles and sharing.
  std::vector<int> visits(count, 0);
  std::vector<int> stack = {tree.root};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < 0 || id >= count) {
      return absl::InvalidArgumentError("decision tree child index out of range");
    }
    if (++visits[id] > 1) {
      return absl::InvalidArgumentError("decision tree is not a tree");
    }
    const DecisionTree::Node& node = tree.nodes[id];
    if (node.feature < 0) {
      if (node.label < 0 || node.label >= num_labels) {
        return absl::InvalidArgumentError("decision tree leaf has unknown label");
      }
      continue;
    }
    if (node.feature >= width) {
      return absl::InvalidArgumentError(
          "decision tree tests a feature outside the space");
    }
    stack.push_back(node.if_true);
    stack.push_back(node.if_false);
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Classifier> Classifier::Create(FeatureSpace space,
                                              std::vector<std::string> labels,
                                              Repr repr) {
  if (labels.size() < 2) {
    return absl::InvalidArgumentError("label set needs at least two labels");
  }
  std::set<std::string> seen;
  for (const std::string& label : labels) {
    if (label.empty() || !seen.insert(label).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("label names must be unique and non-empty: '", label, "'"));
    }
  }
  const int width = space.size();
  const int num_labels = static_cast<int>(labels.size());
  auto bad_label = [num_labels](LabelId id) {
    return id < 0 || id >= num_labels;
  };
  if (const auto* table = std::get_if<TruthTable>(&repr)) {
    const uint64_t expected = uint64_t{1} << width;
    if (table->entries.size() != expected) {
      return absl::InvalidArgumentError(absl::StrCat(
          "truth table has ", table->entries.size(), " entries; expected ",
          expected));
    }
    if (std::any_of(table->entries.begin(), table->entries.end(), bad_label)) {
      return absl::InvalidArgumentError("truth table entry has unknown label");
    }
  } else if (const auto* tree = std::get_if<DecisionTree>(&repr)) {
    if (absl::Status s = ValidateTree(*tree, width, num_labels); !s.ok()) {
      return s;
    }
  } else {
    const auto& rules = std::get<LabelRules>(repr);
    if (bad_label(rules.default_label)) {
      return absl::InvalidArgumentError("rules default label unknown");
    }
    for (const auto& rule : rules.rules) {
      if (bad_label(rule.label)) {
        return absl::InvalidArgumentError("rule label unknown");
      }
      for (const LiteralSet& term : rule.terms) {
        if (term.width() != width) {
          return absl::InvalidArgumentError("rule term width mismatch");
        }
      }
    }
  }
  Classifier c;
  c.space_ = std::move(space);
  c.labels_ = std::move(labels);
  c.repr_ = std::move(repr);
  return c;
}

std::optional<LabelId> Classifier::FindLabel(std::string_view name) const {
  for (int i = 0; i < num_labels(); ++i) {
    if (labels_[i] == name) return i;
  }
  return std::nullopt;
}

LabelId Classifier::Predict(const World& w) const {
  if (const auto* table = std::get_if<TruthTable>(&repr_)) {
    return table->entries[w.bits()];
  }
  if (const auto* tree = std::get_if<DecisionTree>(&repr_)) {
    const DecisionTree::Node* node = &tree->nodes[tree->root];
    while (node->feature >= 0) {
      node = &tree->nodes[w.Get(node->feature) ? node->if_true : node->if_false];
    }
    return node->label;
  }
  const auto& rules = std::get<LabelRules>(repr_);
  for (const auto& rule : rules.rules) {
    for (const LiteralSet& term : rule.terms) {
      if (term.SatisfiedBy(w)) return rule.label;
    }
  }
  return rules.default_label;
}

Classifier Classifier::ToTruthTable() const {
  TruthTable table;
  table.entries.reserve(uint64_t{1} << width());
  for (World w : WorldRange(width())) table.entries.push_back(Predict(w));
  Classifier out;
  out.space_ = space_;
  out.labels_ = labels_;
  out.repr_ = std::move(table);
  return out;
}

absl::StatusOr<LabelId> Evaluate(const Classifier& c, const World& w) {
  if (w.width() != c.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "world has width ", w.width(), "; classifier expects ", c.width()));
  }
  return c.Predict(w);
}

absl::StatusOr<GroundTruthSet> GroundTruthSet::Create(
    const Classifier& c, std::vector<std::pair<World, LabelId>> points) {
  for (const auto& [w, label] : points) {
    if (w.width() != c.width()) {
      return absl::InvalidArgumentError("ground-truth world outside the space");
    }
    if (label < 0 || label >= c.num_labels()) {
      return absl::InvalidArgumentError("ground-truth label outside Y");
    }
  }
  return GroundTruthSet{std::move(points)};
}

absl::StatusOr<WorldRange> EnumerateWorlds(const FeatureSpace& space) {
  if (space.size() > MaxFeatures()) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "refusing to enumerate 2^", space.size(), " worlds (cap ",
        MaxFeatures(), ")"));
  }
  return WorldRange(space.size());
}

}  // namespace xfair
