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

// Boolean feature spaces, worlds, partial assignments and classifiers.
//
// A world of width n is stored as an unsigned integer whose most significant
// of the n low bits is feature 0. The integer value of that bit vector is the
// canonical world order; every deterministic tie-break in the library refers
// to it. Index sets over features use the same bit layout, so a world XOR an
// index mask flips exactly those features.

#ifndef XFAIR_FEATURE_MODEL_H_
#define XFAIR_FEATURE_MODEL_H_

#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace xfair {

inline constexpr int kDefaultMaxFeatures = 24;
// Hard ceiling imposed by the 64-bit world encoding.
inline constexpr int kAbsoluteMaxFeatures = 62;

// The feature cap in effect: kDefaultMaxFeatures unless XFAIR_MAX_N is set.
int MaxFeatures();

// Bit for feature `feature` in a space of `width` features.
constexpr uint64_t FeatureBit(int width, int feature) {
  return uint64_t{1} << (width - 1 - feature);
}

constexpr uint64_t FullMask(int width) {
  return width == 0 ? 0 : (~uint64_t{0} >> (64 - width));
}

// Feature indices present in `mask`, ascending.
std::vector<int> MaskIndices(int width, uint64_t mask);
uint64_t IndicesMask(int width, const std::vector<int>& indices);

class FeatureSpace {
 public:
  FeatureSpace() = default;

  // Names must be unique and non-empty; 1 <= size <= MaxFeatures().
  static absl::StatusOr<FeatureSpace> Create(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> IndexOf(std::string_view name) const;

  bool operator==(const FeatureSpace&) const = default;

 private:
  explicit FeatureSpace(std::vector<std::string> names)
      : names_(std::move(names)) {}

  std::vector<std::string> names_;
};

class World {
 public:
  World() = default;
  World(int width, uint64_t bits) : width_(width), bits_(bits & FullMask(width)) {}

  // Parses "0101" (feature 0 first).
  static absl::StatusOr<World> FromString(std::string_view text);

  int width() const { return width_; }
  uint64_t bits() const { return bits_; }

  bool Get(int feature) const { return (bits_ & FeatureBit(width_, feature)) != 0; }
  World With(int feature, bool value) const;
  World Flipped(int feature) const {
    return World(width_, bits_ ^ FeatureBit(width_, feature));
  }
  World Xor(uint64_t mask) const { return World(width_, bits_ ^ mask); }

  std::string ToString() const;

  auto operator<=>(const World&) const = default;

 private:
  int width_ = 0;
  uint64_t bits_ = 0;
};

// Number of differing features. Errors on width mismatch.
absl::StatusOr<int> Hamming(const World& a, const World& b);

// Unchecked distance for same-width worlds.
int Distance(const World& a, const World& b);

// A consistent conjunction of literals: the features in `mask` take the values
// in `values`. Used for instance descriptions, rule terms and antecedents.
class LiteralSet {
 public:
  LiteralSet() = default;
  explicit LiteralSet(int width) : width_(width) {}
  LiteralSet(int width, uint64_t mask, uint64_t values)
      : width_(width), mask_(mask & FullMask(width)), values_(values & mask_) {}

  // Errors if a feature repeats with both values or is out of range.
  static absl::StatusOr<LiteralSet> Create(
      int width, const std::vector<std::pair<int, bool>>& literals);

  // All n literals describing `w`.
  static LiteralSet Of(const World& w) {
    return LiteralSet(w.width(), FullMask(w.width()), w.bits());
  }

  int width() const { return width_; }
  uint64_t mask() const { return mask_; }
  uint64_t values() const { return values_; }
  int size() const;
  bool empty() const { return mask_ == 0; }

  bool Has(int feature) const { return (mask_ & FeatureBit(width_, feature)) != 0; }
  bool Value(int feature) const { return (values_ & FeatureBit(width_, feature)) != 0; }
  LiteralSet With(int feature, bool value) const;
  LiteralSet Without(int feature) const;

  bool SatisfiedBy(const World& w) const { return (w.bits() & mask_) == values_; }
  bool SubsetOf(const LiteralSet& other) const {
    return (mask_ & other.mask_) == mask_ && (other.values_ & mask_) == values_;
  }
  // `w` with the literal values written over it: the unique closest world.
  World Complete(const World& w) const {
    return World(width_, (w.bits() & ~mask_) | values_);
  }

  std::vector<std::pair<int, bool>> Literals() const;

  bool operator==(const LiteralSet&) const = default;

 private:
  int width_ = 0;
  uint64_t mask_ = 0;
  uint64_t values_ = 0;
};

using LabelId = int;

struct TruthTable {
  std::vector<LabelId> entries;  // 2^n entries, canonical world order.
};

struct DecisionTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf.
    int if_true = -1;
    int if_false = -1;
    LabelId label = -1;
  };
  std::vector<Node> nodes;
  int root = 0;
};

// First matching term wins, scanning rules in order and terms in order.
struct LabelRules {
  struct Rule {
    LabelId label = 0;
    std::vector<LiteralSet> terms;
  };
  std::vector<Rule> rules;
  LabelId default_label = 0;
};

class Classifier {
 public:
  using Repr = std::variant<TruthTable, DecisionTree, LabelRules>;

  Classifier() = default;

  // Validates the representation against the space and label set.
  static absl::StatusOr<Classifier> Create(FeatureSpace space,
                                           std::vector<std::string> labels,
                                           Repr repr);

  const FeatureSpace& space() const { return space_; }
  int width() const { return space_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int num_labels() const { return static_cast<int>(labels_.size()); }
  const std::string& label_name(LabelId id) const { return labels_[id]; }
  std::optional<LabelId> FindLabel(std::string_view name) const;
  const Repr& repr() const { return repr_; }

  // Width is not checked; see Evaluate() for the checked form.
  LabelId Predict(const World& w) const;

  // Same function tabulated over all 2^n worlds.
  Classifier ToTruthTable() const;

 private:
  FeatureSpace space_;
  std::vector<std::string> labels_;
  Repr repr_;
};

absl::StatusOr<LabelId> Evaluate(const Classifier& c, const World& w);

// Labels the modeled phenomenon f assigned to observed worlds.
struct GroundTruthSet {
  std::vector<std::pair<World, LabelId>> points;

  static absl::StatusOr<GroundTruthSet> Create(
      const Classifier& c, std::vector<std::pair<World, LabelId>> points);
};

// All worlds of a space in canonical order, without materializing them.
class WorldRange {
 public:
  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = World;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    Iterator(int width, uint64_t next) : width_(width), next_(next) {}
    World operator*() const { return World(width_, next_); }
    Iterator& operator++() {
      ++next_;
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++next_;
      return copy;
    }
    bool operator==(const Iterator& other) const { return next_ == other.next_; }

   private:
    int width_ = 0;
    uint64_t next_ = 0;
  };

  explicit WorldRange(int width) : width_(width) {}
  Iterator begin() const { return Iterator(width_, 0); }
  Iterator end() const { return Iterator(width_, uint64_t{1} << width_); }
  uint64_t size() const { return uint64_t{1} << width_; }

 private:
  int width_;
};

// Refuses spaces above MaxFeatures() rather than hanging.
absl::StatusOr<WorldRange> EnumerateWorlds(const FeatureSpace& space);

}  // namespace xfair

#endif  // XFAIR_FEATURE_MODEL_H_
