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

#include "xfair/transforms.h"

#include <algorithm>
#include <bit>

#include "absl/strings/str_cat.h"

namespace xfair {

absl::StatusOr<Transformation> Transformation::Create(
    int width, const std::vector<std::pair<int, bool>>& targets) {
  absl::StatusOr<LiteralSet> set = LiteralSet::Create(width, targets);
  if (!set.ok()) return set.status();
  return Transformation(*set);
}

absl::StatusOr<World> Apply(const Transformation& t, const World& w) {
  if (t.width() != w.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "transformation index out of range for width ", w.width()));
  }
  return t.Apply(w);
}

bool CanonicalMaskLess(uint64_t a, uint64_t b) {
  const int size_a = std::popcount(a);
  const int size_b = std::popcount(b);
  if (size_a != size_b) return size_a < size_b;
  // With feature 0 in the top bit, lexicographic order on equal-size sorted
  // index lists is descending integer order.
  return a > b;
}

bool CanonicalLess(const Transformation& a, const Transformation& b) {
  if (a.mask() != b.mask()) return CanonicalMaskLess(a.mask(), b.mask());
  return a.targets().values() > b.targets().values();
}

void ForEachIndexSet(int width, int min_size, int max_size,
                     const std::function<bool(uint64_t)>& fn) {
  max_size = std::min(max_size, width);
  for (int k = std::max(min_size, 0); k <= max_size; ++k) {
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    while (true) {
      if (!fn(IndicesMask(width, combo))) return;
      int pos = k - 1;
      while (pos >= 0 && combo[pos] == width - k + pos) --pos;
      if (pos < 0) break;
      ++combo[pos];
      for (int i = pos + 1; i < k; ++i) combo[i] = combo[i - 1] + 1;
    }
  }
}

absl::Status CheckFocalQuery(const Classifier& c, const World& focal,
                             LabelId target) {
  if (focal.width() != c.width()) {
    return absl::InvalidArgumentError("focal point width mismatch");
  }
  if (target < 0 || target >= c.num_labels()) {
    return absl::InvalidArgumentError("unknown target label");
  }
  if (c.Predict(focal) == target) {
    return absl::FailedPreconditionError(absl::StrCat(
        "focal point ", focal.ToString(), " already has label '",
        c.label_name(target), "'"));
  }
  return absl::OkStatus();
}

namespace {

absl::StatusOr<int> ClampRadius(const Classifier& c, int radius) {
  if (radius < 0) return absl::InvalidArgumentError("radius must be >= 0");
  return std::min(radius, c.width());
}

}  // namespace

absl::StatusOr<Appropriateness> Classify(const Transformation& t,
                                         const Classifier& c,
                                         const World& focal, LabelId target) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  if (t.width() != c.width()) {
    return absl::InvalidArgumentError("transformation width mismatch");
  }
  Appropriateness out;
  const World image = t.Apply(focal);
  out.appropriate = c.Predict(image) == target;
  if (!out.appropriate) return out;

  // Minimality: no target world agreeing with the image on the index set is
  // strictly closer to the focal point.
  const int image_distance = Distance(image, focal);
  const uint64_t free = FullMask(c.width()) & ~t.mask();
  out.minimally_appropriate = true;
  for (uint64_t s = free;; s = (s - 1) & free) {
    const World other((c.width()), (image.bits() & ~free) | s);
    if (c.Predict(other) == target && Distance(other, focal) < image_distance) {
      out.minimally_appropriate = false;
      break;
    }
    if (s == 0) break;
  }

  // Sufficiency: no world whose difference from the focal point lies on a
  // proper subset of the index set is already appropriate.
  out.sufficiently_appropriate = true;
  const uint64_t mask = t.mask();
  if (mask != 0) {
    for (uint64_t s = (mask - 1) & mask;; s = (s - 1) & mask) {
      if (c.Predict(focal.Xor(s)) == target) {
        out.sufficiently_appropriate = false;
        break;
      }
      if (s == 0) break;
    }
  }
  out.sufficiently_minimally_appropriate =
      out.sufficiently_appropriate && out.minimally_appropriate;
  return out;
}

absl::StatusOr<OverdeterminationSet> MinimalCounterfactuals(
    const Classifier& c, const World& focal, LabelId target, int radius) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  absl::StatusOr<int> d = ClampRadius(c, radius);
  if (!d.ok()) return d.status();
  OverdeterminationSet out{focal, target, {}};
  std::vector<uint64_t> found;
  ForEachIndexSet(c.width(), 1, *d, [&](uint64_t mask) {
    if (c.Predict(focal.Xor(mask)) != target) return true;
    // Every appropriate proper subset contains a minimal one found earlier.
    const bool dominated = std::any_of(
        found.begin(), found.end(),
        [mask](uint64_t m) { return (m & ~mask) == 0; });
    if (!dominated) {
      found.push_back(mask);
      out.deltas.push_back(Transformation::Flip(focal, mask));
    }
    return true;
  });
  return out;
}

absl::StatusOr<std::vector<Transformation>> AppropriateTransformations(
    const Classifier& c, const World& focal, LabelId target, int radius) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  absl::StatusOr<int> d = ClampRadius(c, radius);
  if (!d.ok()) return d.status();
  std::vector<Transformation> out;
  ForEachIndexSet(c.width(), 1, *d, [&](uint64_t mask) {
    if (c.Predict(focal.Xor(mask)) == target) {
      out.push_back(Transformation::Flip(focal, mask));
    }
    return true;
  });
  return out;
}

absl::StatusOr<std::vector<World>> Boundary(const Classifier& c,
                                            const World& focal, LabelId target,
                                            int radius) {
  absl::StatusOr<OverdeterminationSet> minimal =
      MinimalCounterfactuals(c, focal, target, radius);
  if (!minimal.ok()) return minimal.status();
  std::vector<World> out;
  for (const Transformation& t : minimal->deltas) out.push_back(t.Apply(focal));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace xfair
