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

// Prejudicial factors, biased dependencies, and fair-and-adequate
// explanation sets.
//
// An explainee's conundrum is either incompleteness (CI: they attend only to
// some dimensions and believe the rest irrelevant) or a mistake (CM: they
// hold wrong beliefs about the values some dimensions need). A set of
// transformations is adequate when one of them resolves the conundrum, and
// fair when, for every declared prejudicial factor, one of them lands on a
// point the factor leaves unchanged (CB).

#ifndef XFAIR_FAIRNESS_H_
#define XFAIR_FAIRNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "xfair/feature_model.h"
#include "xfair/formula.h"
#include "xfair/transforms.h"

namespace xfair {

// A value-setting map over protected dimensions, e.g. privileged := 1.
class PrejudicialFactor {
 public:
  PrejudicialFactor() = default;

  // The map must set at least one dimension.
  static absl::StatusOr<PrejudicialFactor> Create(std::string name,
                                                  Transformation map);

  const std::string& name() const { return name_; }
  const Transformation& map() const { return map_; }

  World Apply(const World& w) const { return map_.Apply(w); }
  bool Fixes(const World& w) const { return map_.Apply(w) == w; }

 private:
  PrejudicialFactor(std::string name, Transformation map)
      : name_(std::move(name)), map_(map) {}

  std::string name_;
  Transformation map_;
};

struct BiasWitness {
  Transformation delta;
  LabelId eta = 0;  // Label of the focal point and of its transform.
  LabelId pi = 0;   // Label of both once the factor is applied.
};

// First flip set (canonical order, 1 <= |i| <= radius) with
// f(x) = f(D(x)) = eta and f(P(x)) = f(P(D(x))) = pi, eta != pi.
absl::StatusOr<std::optional<BiasWitness>> BiasedDependency(
    const Classifier& c, const PrejudicialFactor& factor, const World& focal,
    int radius);

struct Definability {
  std::optional<Formula> formula;
  bool degenerate = false;  // Population of a single world.
  int size = 0;             // Node count of the formula.
};

inline constexpr int kMaxDefinabilitySize = 9;

// Smallest formula over feature atoms (by node count, ties by enumeration
// order: atoms, negations, conjunctions, disjunctions) whose truth on the
// population matches membership in the factor's fixed points.
absl::StatusOr<Definability> ImplicitlyDefinable(
    const Classifier& c, const PrejudicialFactor& factor,
    const std::vector<World>& population);

enum class ConundrumKind { kCI, kCM };

class ConundrumSpec {
 public:
  ConundrumSpec() = default;

  // `attended` must be a proper subset of the dimensions so that some
  // unattended dimension remains.
  static absl::StatusOr<ConundrumSpec> Incompleteness(int width,
                                                      uint64_t attended);
  // `mistaken` must be non-empty; `believed` gives the values the explainee
  // thought sufficient, on a subset of the mistaken dimensions.
  static absl::StatusOr<ConundrumSpec> Mistake(int width, uint64_t mistaken,
                                               LiteralSet believed);

  ConundrumKind kind() const { return kind_; }
  int width() const { return width_; }
  uint64_t attended() const { return attended_; }
  uint64_t unattended() const { return FullMask(width_) & ~attended_; }
  uint64_t mistaken() const { return mistaken_; }
  const LiteralSet& believed() const { return believed_; }

  std::string Name() const { return kind_ == ConundrumKind::kCI ? "CI" : "CM"; }

 private:
  ConundrumKind kind_ = ConundrumKind::kCI;
  int width_ = 0;
  uint64_t attended_ = 0;
  uint64_t mistaken_ = 0;
  LiteralSet believed_;
};

// One requirement a fair-and-adequate set must meet: the conundrum, or CB
// for one factor.
struct Constraint {
  bool is_factor = false;
  int factor = -1;
  std::string name;  // "CI", "CM" or "CB:<factor name>".
};

std::vector<Constraint> ConstraintsFor(
    const ConundrumSpec& spec, const std::vector<PrejudicialFactor>& factors);

// Whether `delta` discharges `constraint`, given the label its image carries.
// Only the features the transformation actually changes count.
bool Discharges(const Constraint& constraint, const ConundrumSpec& spec,
                const std::vector<PrejudicialFactor>& factors,
                const World& focal, LabelId target, const Transformation& delta,
                LabelId image_label);

bool Discharges(const Constraint& constraint, const ConundrumSpec& spec,
                const std::vector<PrejudicialFactor>& factors,
                const Classifier& c, const World& focal, LabelId target,
                const Transformation& delta);

struct ConstraintVerdict {
  std::string constraint;
  bool satisfied = false;
  std::optional<Transformation> witness;
  std::string diagnostic;
};

ConstraintVerdict CheckCI(const Classifier& c, const World& focal,
                          LabelId target, const ConundrumSpec& spec,
                          const std::vector<Transformation>& deltas);

ConstraintVerdict CheckCM(const Classifier& c, const World& focal,
                          LabelId target, const ConundrumSpec& spec,
                          const std::vector<Transformation>& deltas);

// One verdict per factor.
std::vector<ConstraintVerdict> CheckCBPerFactor(
    const Classifier& c, const World& focal, LabelId target,
    const std::vector<PrejudicialFactor>& factors,
    const std::vector<Transformation>& deltas);

// Vacuously satisfied with no factors.
ConstraintVerdict CheckCB(const Classifier& c, const World& focal,
                          LabelId target,
                          const std::vector<PrejudicialFactor>& factors,
                          const std::vector<Transformation>& deltas);

struct FairAdequateSet {
  std::vector<Transformation> deltas;
  std::vector<ConstraintVerdict> certificates;  // One per constraint.
  int radius = 0;
  OverdeterminationSet overdetermination;
};

// Greedy cover of the constraints by appropriate flip transformations within
// the radius (most newly covered constraints first, ties canonical), then a
// pruning pass. Fails with FailedPrecondition naming the first constraint no
// candidate discharges.
absl::StatusOr<FairAdequateSet> ComputeFairAdequateSet(
    const Classifier& c, const World& focal, LabelId target, int radius,
    const ConundrumSpec& spec, const std::vector<PrejudicialFactor>& factors);

}  // namespace xfair

#endif  // XFAIR_FAIRNESS_H_
