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

// Propositional formulas over feature atoms and prediction atoms.
//
// Text syntax: atoms are feature or label names; `!` binds tighter than `&`,
// which binds tighter than `|`; parentheses group. A counterfactual is written
// "antecedent => consequent".

#ifndef XFAIR_FORMULA_H_
#define XFAIR_FORMULA_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "xfair/feature_model.h"

namespace xfair {

class Formula {
 public:
  enum class Kind { kFeature, kLabel, kNot, kAnd, kOr };

  static Formula Feature(int index);
  static Formula Label(LabelId label);
  static Formula Not(Formula operand);
  static Formula And(std::vector<Formula> operands);
  static Formula Or(std::vector<Formula> operands);
  static Formula Literal(int index, bool positive);
  // Conjunction of the literals in `set`, feature order. Must be non-empty.
  static Formula Conjunction(const LiteralSet& set);

  Kind kind() const { return kind_; }
  // Feature index or label id for atoms.
  int atom() const { return atom_; }
  const std::vector<Formula>& children() const { return children_; }

  bool MentionsLabels() const;
  // Number of nodes; used as the size measure for smallest-formula search.
  int NodeCount() const;

  // Truth at `w`; prediction atoms consult `c`. Atoms are assumed in range.
  bool Holds(const World& w, const Classifier& c) const;

  // Checks every atom against the classifier's space and label set.
  absl::Status Validate(const Classifier& c) const;

  std::string ToString(const Classifier& c) const;

  bool operator==(const Formula&) const = default;

 private:
  Formula(Kind kind, int atom, std::vector<Formula> children)
      : kind_(kind), atom_(atom), children_(std::move(children)) {}

  Kind kind_ = Kind::kFeature;
  int atom_ = 0;
  std::vector<Formula> children_;
};

absl::StatusOr<Formula> ParseFormula(std::string_view text, const Classifier& c);

}  // namespace xfair

#endif  // XFAIR_FORMULA_H_
