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

// Local geometry of the counterfactuals around a focal point: flip degree,
// shape, the region N and its convexity, specificity of closest witnesses and
// ground-truth connectedness.
//
// Flip degree counts support changes along chains of antecedents that grow by
// one literal per step, starting from the empty antecedent. The empty
// antecedent's closest world is the focal point itself, so its support is
// false and a function that flips once and stays flipped has degree 1.

#ifndef XFAIR_STRUCTURE_H_
#define XFAIR_STRUCTURE_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "xfair/feature_model.h"
#include "xfair/formula.h"

namespace xfair {

struct RefinementChain {
  std::vector<LiteralSet> steps;  // steps[0] is the empty antecedent.
  std::vector<bool> support;
};

struct FlipDegreeResult {
  int degree = 0;
  RefinementChain witness;
};

// Maximum number of support changes over chains adding at most `radius`
// literals. The witness is the shortest chain attaining it, ties broken
// lexicographically by added feature. Degree 0 when nothing within the radius
// reaches the target.
absl::StatusOr<FlipDegreeResult> FlipDegree(const Classifier& c,
                                            const World& focal, LabelId target,
                                            int radius);

struct Shape {
  bool nearly_constant = true;
  int shifts = 0;  // The flip degree.

  std::string ToString() const;
};

// Nearly constant iff every minimal counterfactual flip set within the radius
// keeps the target label on all of its supersets within the radius.
absl::StatusOr<Shape> ClassifyShape(const Classifier& c, const World& focal,
                                    LabelId target, int radius);

enum class RegionMode {
  // Every world within the radius carrying the focal label.
  kWithinRadius,
  // Only those connected to the focal point through such worlds.
  kConnectedComponent,
};

struct Region {
  int width = 0;
  std::vector<World> interior;
  std::vector<World> boundary;
  std::vector<bool> member;  // Indexed by world bits; interior or boundary.

  bool Contains(const World& w) const { return member[w.bits()]; }
  bool InInterior(const World& w) const;
};

absl::StatusOr<Region> BuildRegion(const Classifier& c, const World& focal,
                                   LabelId target, int radius,
                                   RegionMode mode = RegionMode::kWithinRadius);

enum class ConvexityNotion { kInterval, kStar, kMonotoneGeodesic };

std::string NotionName(ConvexityNotion notion);

struct ConvexityVerdict {
  ConvexityNotion notion = ConvexityNotion::kInterval;
  bool convex = true;
  // Interval and star: {endpoint, outside point, endpoint}. Monotone
  // geodesic: {focal, unreachable point}.
  std::vector<World> witness;
};

ConvexityVerdict CheckConvexity(const Region& region, const World& focal,
                                ConvexityNotion notion);

absl::StatusOr<ConvexityVerdict> ConvexityCheck(
    const Classifier& c, const World& focal, LabelId target, int radius,
    ConvexityNotion notion, RegionMode mode = RegionMode::kWithinRadius);

struct LocalStructureReport {
  FlipDegreeResult flip;
  Shape shape;
  Region region;
  std::vector<ConvexityVerdict> convexity;  // interval, star, monotone.
};

absl::StatusOr<LocalStructureReport> AnalyzeLocalStructure(
    const Classifier& c, const World& focal, LabelId target, int radius,
    RegionMode mode = RegionMode::kWithinRadius);

// 64-bit FNV-1a over the feature names, label names and truth table.
uint64_t ClassifierHash(const Classifier& c);

struct HarnessRow {
  uint64_t classifier_hash = 0;
  World focal;
  std::string target;
  int flip_degree = 0;
  bool interval = false;
  bool star = false;
  bool monotone_geodesic = false;
  std::map<std::string, std::vector<World>> counterexamples;
};

// counts[notion][low][convex], with low = flip degree <= 2.
struct AgreementMatrix {
  std::map<std::string, std::array<std::array<int, 2>, 2>> counts;
  int rows = 0;
  int implication_violations = 0;
};

struct HarnessReport {
  std::vector<HarnessRow> rows;
  AgreementMatrix matrix;
};

// Runs every focal point and every target label in the classifier's image
// other than the focal label. The radius is clamped to n; a negative radius
// means n.
absl::StatusOr<HarnessReport> StructureSweep(
    const std::vector<Classifier>& family, int radius,
    RegionMode mode = RegionMode::kWithinRadius);

struct SpecificityChainResult {
  bool vacuous = false;
  bool alternating = false;
  std::vector<bool> support;
  // One closest world per antecedent, with strictly increasing distance and
  // nested differences from the focal point, when such a choice exists.
  std::vector<World> witnesses;
  bool strictly_increasing = false;
  bool common_monotone_path = false;
};

// `chain` must be strictly increasing in specificity: each antecedent entails
// the previous one and not conversely.
absl::StatusOr<SpecificityChainResult> CheckSpecificityChain(
    const Classifier& c, const World& focal, LabelId target,
    const std::vector<Formula>& chain);

struct SpecificityReport {
  int sampled = 0;
  int vacuous = 0;
  int evaluated = 0;  // Chains with at least two alternating steps.
  int passed = 0;
  int strict_distance_violations = 0;
  int monotone_path_failures = 0;
};

// Samples random literal refinement chains, keeps their alternating
// subsequence and checks it. About one chain in ten is made contradictory
// and counted as vacuous.
absl::StatusOr<SpecificityReport> SpecificityCheck(const Classifier& c,
                                                   const World& focal,
                                                   LabelId target, int chains,
                                                   uint64_t seed);

struct JustificationResult {
  bool justified = false;
  std::vector<World> path;  // From y to the ground-truth point.
};

// Breadth-first search over Hamming-adjacent worlds sharing y's label for a
// ground-truth point whose observed label matches both the classifier and
// y's label.
absl::StatusOr<JustificationResult> Justified(const Classifier& c,
                                              const World& y,
                                              const GroundTruthSet& gt);

}  // namespace xfair

#endif  // XFAIR_STRUCTURE_H_
