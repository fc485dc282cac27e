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

// Fixed transformations of a focal point and their appropriateness.

#ifndef XFAIR_TRANSFORMS_H_
#define XFAIR_TRANSFORMS_H_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "xfair/feature_model.h"

namespace xfair {

// Writes target values on an index set and leaves every other dimension
// alone. Applying it twice is the same as applying it once.
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(LiteralSet targets) : targets_(targets) {}

  static absl::StatusOr<Transformation> Create(
      int width, const std::vector<std::pair<int, bool>>& targets);

  // Flips the features in `index_mask` relative to `focal`.
  static Transformation Flip(const World& focal, uint64_t index_mask) {
    return Transformation(
        LiteralSet(focal.width(), index_mask, ~focal.bits() & index_mask));
  }

  int width() const { return targets_.width(); }
  uint64_t mask() const { return targets_.mask(); }
  int size() const { return targets_.size(); }
  std::vector<int> Indices() const { return MaskIndices(width(), mask()); }
  const LiteralSet& targets() const { return targets_; }

  World Apply(const World& w) const { return targets_.Complete(w); }

  bool operator==(const Transformation&) const = default;

 private:
  LiteralSet targets_;
};

// Checked application: the world must have the transformation's width.
absl::StatusOr<World> Apply(const Transformation& t, const World& w);

// Canonical order: index-set size, then lexicographic on the sorted index
// list, then target values.
bool CanonicalLess(const Transformation& a, const Transformation& b);
bool CanonicalMaskLess(uint64_t a, uint64_t b);

// Calls fn(mask) for every index set of size min_size..max_size over `width`
// features, in canonical order. Stops early when fn returns false.
void ForEachIndexSet(int width, int min_size, int max_size,
                     const std::function<bool(uint64_t)>& fn);

struct Appropriateness {
  bool appropriate = false;
  bool minimally_appropriate = false;
  bool sufficiently_appropriate = false;
  bool sufficiently_minimally_appropriate = false;

  bool operator==(const Appropriateness&) const = default;
};

// Checks widths and the label, and that the focal point does not already
// carry `target`.
absl::Status CheckFocalQuery(const Classifier& c, const World& focal,
                             LabelId target);

// Errors when the focal point already carries `target`.
absl::StatusOr<Appropriateness> Classify(const Transformation& t,
                                         const Classifier& c,
                                         const World& focal, LabelId target);

struct OverdeterminationSet {
  World focal;
  LabelId target = 0;
  std::vector<Transformation> deltas;

  bool overdetermined() const { return deltas.size() >= 2; }
};

// Every flip set of size <= radius whose transformation is sufficiently
// minimally appropriate, in canonical order.
absl::StatusOr<OverdeterminationSet> MinimalCounterfactuals(
    const Classifier& c, const World& focal, LabelId target, int radius);

// Every appropriate flip transformation within the radius, canonical order.
absl::StatusOr<std::vector<Transformation>> AppropriateTransformations(
    const Classifier& c, const World& focal, LabelId target, int radius);

// Images of the minimal counterfactual transformations within the radius,
// sorted in world order. Radius 0 yields the empty set.
absl::StatusOr<std::vector<World>> Boundary(const Classifier& c,
                                            const World& focal, LabelId target,
                                            int radius);

}  // namespace xfair

#endif  // XFAIR_TRANSFORMS_H_
