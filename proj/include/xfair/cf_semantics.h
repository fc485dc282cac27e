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

// Closest-world evaluation of counterfactual conditionals under the Hamming
// norm, and the set of true counterfactuals around a focal point.

#ifndef XFAIR_CF_SEMANTICS_H_
#define XFAIR_CF_SEMANTICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "xfair/feature_model.h"
#include "xfair/formula.h"

namespace xfair {

struct Counterfactual {
  Formula antecedent;
  Formula consequent;

  // Rejects prediction atoms in the antecedent and out-of-range atoms.
  static absl::StatusOr<Counterfactual> Create(Formula antecedent,
                                               Formula consequent,
                                               const Classifier& c);

  std::string ToString(const Classifier& c) const;
};

// Parses "antecedent => consequent".
absl::StatusOr<Counterfactual> ParseCounterfactual(std::string_view text,
                                                   const Classifier& c);

absl::StatusOr<bool> Satisfies(const World& w, const Formula& f,
                               const Classifier& c);

// Worlds satisfying `f` at minimum distance from `w`, in world order. Empty
// iff `f` is unsatisfiable.
absl::StatusOr<std::vector<World>> ClosestWorlds(const World& w,
                                                 const Formula& f,
                                                 const Classifier& c);

// True iff every closest antecedent world satisfies the consequent; true
// when the antecedent is unsatisfiable.
absl::StatusOr<bool> EvalCounterfactual(const World& w,
                                        const Counterfactual& cf,
                                        const Classifier& c);

enum class AntecedentMode { kConjunctions, kFullBoolean };

struct ExplanationMember {
  Counterfactual counterfactual;
  // Set in conjunction mode.
  std::optional<LiteralSet> literals;
  std::vector<World> closest;
  int distance = 0;
};

struct CompleteExplanation {
  World focal;
  LabelId target = 0;
  int radius = 0;
  std::vector<ExplanationMember> members;
};

// Every non-vacuous counterfactual (antecedent => target) true at the focal
// point whose closest antecedent worlds lie within the radius. Conjunction
// mode orders members by antecedent size, then features, positive literal
// first. Full Boolean mode is refused above 4 features.
absl::StatusOr<CompleteExplanation> CompleteExplanationFor(
    const Classifier& c, const World& focal, LabelId target, int radius,
    AntecedentMode mode = AntecedentMode::kConjunctions);

struct CorrespondenceMismatch {
  LiteralSet antecedent;
  bool lewis = false;
  bool transformation = false;
};

struct CorrespondenceReport {
  int checked = 0;
  int agreements = 0;
  std::vector<CorrespondenceMismatch> mismatches;
};

// Compares, for every non-empty literal conjunction A, the closest-world truth
// of (A => target) at the focal point with the existence of a minimally
// appropriate transformation over A's dimensions whose image satisfies A.
absl::StatusOr<CorrespondenceReport> CorrespondenceCheck(const Classifier& c,
                                                         const World& focal,
                                                         LabelId target);

// The boundary assembled from the closest worlds of the antecedent-minimal
// conjunction members within the radius, in world order.
absl::StatusOr<std::vector<World>> BoundaryFromCounterfactuals(
    const Classifier& c, const World& focal, LabelId target, int radius);

// All non-empty consistent literal sets over `width` features, in canonical
// order (size, index set, positive literals first).
std::vector<LiteralSet> AllConjunctions(int width, int max_size);

}  // namespace xfair

#endif  // XFAIR_CF_SEMANTICS_H_
