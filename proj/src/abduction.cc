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

#include "xfair/abduction.h"

#include <bit>
#include <variant>

#include "absl/strings/str_cat.h"

namespace xfair {
namespace {

bool ExhaustiveEntails(const Classifier& c, const LiteralSet& literals,
                       LabelId target) {
  const int width = c.width();
  const uint64_t free = FullMask(width) & ~literals.mask();
  for (uint64_t s = free;; s = (s - 1) & free) {
    if (c.Predict(World(width, literals.values() | s)) != target) return false;
    if (s == 0) break;
  }
  return true;
}

bool TreeEntails(const DecisionTree& tree, const LiteralSet& literals,
                 LabelId target) {
  std::vector<int> stack = {tree.root};
  while (!stack.empty()) {
    const DecisionTree::Node& node = tree.nodes[stack.back()];
    stack.pop_back();
    if (node.feature < 0) {
      if (node.label != target) return false;
      continue;
    }
    if (literals.Has(node.feature)) {
      stack.push_back(literals.Value(node.feature) ? node.if_true : node.if_false);
    } else {
      stack.push_back(node.if_true);
      stack.push_back(node.if_false);
    }
  }
  return true;
}

// Branches only on features of the first term the assignment leaves open.
bool RulesEntail(const LabelRules& rules, const LiteralSet& assignment,
                 LabelId target) {
  for (const LabelRules::Rule& rule : rules.rules) {
    for (const LiteralSet& term : rule.terms) {
      const uint64_t shared = term.mask() & assignment.mask();
      if ((term.values() & shared) != (assignment.values() & shared)) continue;
      const uint64_t open = term.mask() & ~assignment.mask();
      if (open == 0) return rule.label == target;
      const int feature = assignment.width() - 1 - std::countr_zero(open);
      return RulesEntail(rules, assignment.With(feature, true), target) &&
             RulesEntail(rules, assignment.With(feature, false), target);
    }
  }
  return rules.default_label == target;
}

}  // namespace

absl::StatusOr<bool> EntailmentOracle::Entails(const Classifier& c,
                                               const LiteralSet& literals,
                                               LabelId target) {
  if (literals.width() != c.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "literal set has width ", literals.width(), "; classifier expects ",
        c.width()));
  }
  if (target < 0 || target >= c.num_labels()) {
    return absl::InvalidArgumentError("unknown target label");
  }
  const int open = c.width() - literals.size();
  ++calls_;
  if (backend_ == OracleBackend::kRulePrune) {
    if (const auto* tree = std::get_if<DecisionTree>(&c.repr())) {
      return TreeEntails(*tree, literals, target);
    }
    if (const auto* rules = std::get_if<LabelRules>(&c.repr())) {
      return RulesEntail(*rules, literals, target);
    }
  }
  if (open > MaxFeatures()) {
    return absl::ResourceExhaustedError(
        absl::StrCat("refusing to enumerate 2^", open, " extensions"));
  }
  return ExhaustiveEntails(c, literals, target);
}

absl::StatusOr<LiteralSet> MinimizeLiterals(EntailmentOracle& oracle,
                                            const Classifier& c,
                                            const LiteralSet& start,
                                            LabelId target,
                                            const LiteralSet& keep) {
  absl::StatusOr<bool> holds = oracle.Entails(c, start, target);
  if (!holds.ok()) return holds.status();
  if (!*holds) {
    return absl::FailedPreconditionError(
        "starting literal set does not entail the target");
  }
  LiteralSet current = start;
  for (int i = c.width() - 1; i >= 0; --i) {
    if (!current.Has(i) || (keep.width() == c.width() && keep.Has(i))) continue;
    const LiteralSet candidate = current.Without(i);
    absl::StatusOr<bool> still = oracle.Entails(c, candidate, target);
    if (!still.ok()) return still.status();
    if (*still) current = candidate;
  }
  return current;
}

absl::StatusOr<LiteralSet> AbductiveExplanation(EntailmentOracle& oracle,
                                                const Classifier& c,
                                                const World& w) {
  absl::StatusOr<LabelId> label = Evaluate(c, w);
  if (!label.ok()) return label.status();
  // The full description of w entails its own label, so no check call.
  LiteralSet current = LiteralSet::Of(w);
  for (int i = c.width() - 1; i >= 0; --i) {
    const LiteralSet candidate = current.Without(i);
    absl::StatusOr<bool> still = oracle.Entails(c, candidate, *label);
    if (!still.ok()) return still.status();
    if (*still) current = candidate;
  }
  return current;
}

absl::StatusOr<LiteralSet> CfToValidExplanation(EntailmentOracle& oracle,
                                                const Classifier& c,
                                                const Transformation& t,
                                                const World& focal,
                                                LabelId target) {
  absl::StatusOr<Appropriateness> kind = Classify(t, c, focal, target);
  if (!kind.ok()) return kind.status();
  if (!kind->appropriate) {
    return absl::FailedPreconditionError(
        "transformation is not appropriate for the target");
  }
  return MinimizeLiterals(oracle, c, LiteralSet::Of(t.Apply(focal)), target,
                          LiteralSet(c.width()));
}

}  // namespace xfair
