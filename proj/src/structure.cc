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

#include "xfair/structure.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "xfair/cf_semantics.h"
#include "xfair/rng.h"
#include "xfair/transforms.h"

namespace xfair {
namespace {

absl::StatusOr<int> CheckRadius(const Classifier& c, int radius) {
  if (radius < 0) return absl::InvalidArgumentError("radius must be >= 0");
  if (c.width() > MaxFeatures()) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "refusing to search 2^", c.width(), " worlds (cap ", MaxFeatures(), ")"));
  }
  return std::min(radius, c.width());
}

LiteralSet FlipLiterals(const World& focal, uint64_t mask) {
  return LiteralSet(focal.width(), mask, ~focal.bits() & mask);
}

}  // namespace

absl::StatusOr<FlipDegreeResult> FlipDegree(const Classifier& c,
                                            const World& focal, LabelId target,
                                            int radius) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  absl::StatusOr<int> d = CheckRadius(c, radius);
  if (!d.ok()) return d.status();
  const int width = c.width();
  const uint64_t count = uint64_t{1} << width;

  // Adding a literal the focal point already satisfies leaves the closest
  // world unchanged, so only chains of growing flip sets matter.
  std::vector<uint8_t> support(count, 0);
  std::vector<int8_t> best(count, -1);
  best[0] = 0;
  int degree = 0;
  for (uint64_t m = 1; m < count; ++m) {
    if (std::popcount(m) > *d) continue;
    support[m] = c.Predict(focal.Xor(m)) == target;
    int value = -1;
    for (uint64_t rest = m; rest != 0; rest &= rest - 1) {
      const uint64_t parent = m & ~(rest & -rest);
      value = std::max(value, best[parent] + (support[m] != support[parent]));
    }
    best[m] = static_cast<int8_t>(value);
    degree = std::max(degree, value);
  }

  FlipDegreeResult out;
  out.degree = degree;
  out.witness.steps.push_back(LiteralSet(width));
  out.witness.support.push_back(false);
  if (degree == 0) return out;

  int length = width + 1;
  for (uint64_t m = 1; m < count; ++m) {
    if (best[m] == degree) length = std::min(length, std::popcount(m));
  }
  // ahead[m]: most flips still collectable growing m to `length` features.
  constexpr int8_t kUnset = std::numeric_limits<int8_t>::min();
  std::vector<int8_t> ahead(count, kUnset);
  for (uint64_t m = count; m-- > 0;) {
    const int size = std::popcount(m);
    if (size > length) continue;
    if (size == length) {
      ahead[m] = 0;
      continue;
    }
    int value = kUnset;
    for (int f = 0; f < width; ++f) {
      const uint64_t bit = FeatureBit(width, f);
      if (m & bit) continue;
      const uint64_t child = m | bit;
      if (ahead[child] == kUnset) continue;
      value = std::max(value, ahead[child] + (support[child] != support[m]));
    }
    ahead[m] = static_cast<int8_t>(value);
  }
  uint64_t mask = 0;
  int flips = 0;
  for (int step = 0; step < length; ++step) {
    for (int f = 0; f < width; ++f) {
      const uint64_t bit = FeatureBit(width, f);
      if (mask & bit) continue;
      const uint64_t child = mask | bit;
      const int gained = support[child] != support[mask];
      if (ahead[child] != kUnset && flips + gained + ahead[child] == degree) {
        flips += gained;
        mask = child;
        break;
      }
    }
    out.witness.steps.push_back(FlipLiterals(focal, mask));
    out.witness.support.push_back(support[mask] != 0);
  }
  return out;
}

std::string Shape::ToString() const {
  return nearly_constant ? "nearly_constant" : absl::StrCat("n_shifting(", shifts, ")");
}

absl::StatusOr<Shape> ClassifyShape(const Classifier& c, const World& focal,
                                    LabelId target, int radius) {
  absl::StatusOr<FlipDegreeResult> flip = FlipDegree(c, focal, target, radius);
  if (!flip.ok()) return flip.status();
  absl::StatusOr<OverdeterminationSet> minimal =
      MinimalCounterfactuals(c, focal, target, radius);
  if (!minimal.ok()) return minimal.status();
  const int d = std::min(radius, c.width());
  Shape shape;
  shape.shifts = flip->degree;
  const uint64_t full = FullMask(c.width());
  for (const Transformation& t : minimal->deltas) {
    const uint64_t free = full & ~t.mask();
    for (uint64_t s = free;; s = (s - 1) & free) {
      const uint64_t superset = t.mask() | s;
      if (std::popcount(superset) <= d &&
          c.Predict(focal.Xor(superset)) != target) {
        shape.nearly_constant = false;
        return shape;
      }
      if (s == 0) break;
    }
  }
  return shape;
}

bool Region::InInterior(const World& w) const {
  return std::binary_search(interior.begin(), interior.end(), w);
}

absl::StatusOr<Region> BuildRegion(const Classifier& c, const World& focal,
                                   LabelId target, int radius,
                                   RegionMode mode) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  absl::StatusOr<int> d = CheckRadius(c, radius);
  if (!d.ok()) return d.status();
  const int width = c.width();
  const LabelId focal_label = c.Predict(focal);
  Region region;
  region.width = width;
  region.member.assign(uint64_t{1} << width, false);
  auto same = [&](const World& w) {
    return Distance(w, focal) <= *d && c.Predict(w) == focal_label;
  };
  if (mode == RegionMode::kWithinRadius) {
    for (World w : WorldRange(width)) {
      if (same(w)) region.interior.push_back(w);
    }
  } else {
    std::vector<bool> seen(uint64_t{1} << width, false);
    std::deque<World> queue = {focal};
    seen[focal.bits()] = true;
    while (!queue.empty()) {
      const World w = queue.front();
      queue.pop_front();
      region.interior.push_back(w);
      for (int f = 0; f < width; ++f) {
        const World next = w.Flipped(f);
        if (!seen[next.bits()] && same(next)) {
          seen[next.bits()] = true;
          queue.push_back(next);
        }
      }
    }
    std::sort(region.interior.begin(), region.interior.end());
  }
  absl::StatusOr<std::vector<World>> boundary = Boundary(c, focal, target, *d);
  if (!boundary.ok()) return boundary.status();
  region.boundary = *std::move(boundary);
  for (const World& w : region.interior) region.member[w.bits()] = true;
  for (const World& w : region.boundary) region.member[w.bits()] = true;
  return region;
}

std::string NotionName(ConvexityNotion notion) {
  switch (notion) {
    case ConvexityNotion::kInterval:
      return "interval";
    case ConvexityNotion::kStar:
      return "star";
    case ConvexityNotion::kMonotoneGeodesic:
      return "monotone_geodesic";
  }
  return "";
}

namespace {

// Smallest world on a geodesic between a and b that lies outside the region.
std::optional<World> FirstOutside(const Region& region, const World& a,
                                  const World& b) {
  const uint64_t diff = a.bits() ^ b.bits();
  std::optional<World> found;
  for (uint64_t s = diff;; s = (s - 1) & diff) {
    const World w = a.Xor(s);
    if (!region.Contains(w) && (!found || w < *found)) found = w;
    if (s == 0) break;
  }
  return found;
}

ConvexityVerdict CheckInterval(const Region& region) {
  ConvexityVerdict verdict{ConvexityNotion::kInterval, true, {}};
  auto check = [&](const World& a, const World& b) {
    if (std::optional<World> w = FirstOutside(region, a, b)) {
      verdict.convex = false;
      verdict.witness = {a, *w, b};
      return false;
    }
    return true;
  };
  const std::vector<World>& bnd = region.boundary;
  const std::vector<World>& in = region.interior;
  for (size_t i = 0; i < bnd.size(); ++i) {
    for (size_t j = i + 1; j < bnd.size(); ++j) {
      if (!check(bnd[i], bnd[j])) return verdict;
    }
  }
  for (const World& a : bnd) {
    for (const World& b : in) {
      if (!check(a, b)) return verdict;
    }
  }
  for (size_t i = 0; i < in.size(); ++i) {
    for (size_t j = i + 1; j < in.size(); ++j) {
      if (!check(in[i], in[j])) return verdict;
    }
  }
  return verdict;
}

ConvexityVerdict CheckStar(const Region& region, const World& focal) {
  ConvexityVerdict verdict{ConvexityNotion::kStar, true, {}};
  std::vector<World> points = region.interior;
  points.insert(points.end(), region.boundary.begin(), region.boundary.end());
  std::sort(points.begin(), points.end());
  for (const World& p : points) {
    if (std::optional<World> w = FirstOutside(region, focal, p)) {
      verdict.convex = false;
      verdict.witness = {focal, *w, p};
      return verdict;
    }
  }
  return verdict;
}

ConvexityVerdict CheckMonotone(const Region& region, const World& focal) {
  ConvexityVerdict verdict{ConvexityNotion::kMonotoneGeodesic, true, {}};
  std::vector<World> points = region.interior;
  points.insert(points.end(), region.boundary.begin(), region.boundary.end());
  std::sort(points.begin(), points.end(), [&focal](const World& a, const World& b) {
    const int da = Distance(a, focal);
    const int db = Distance(b, focal);
    return da != db ? da < db : a < b;
  });
  std::vector<bool> reach(region.member.size(), false);
  for (const World& p : points) {
    if (p == focal) {
      reach[p.bits()] = true;
      continue;
    }
    const uint64_t diff = p.bits() ^ focal.bits();
    for (uint64_t rest = diff; rest != 0; rest &= rest - 1) {
      const World q = p.Xor(rest & -rest);
      if (region.Contains(q) && reach[q.bits()]) {
        reach[p.bits()] = true;
        break;
      }
    }
  }
  for (const World& p : points) {
    if (!reach[p.bits()]) {
      verdict.convex = false;
      verdict.witness = {focal, p};
      return verdict;
    }
  }
  return verdict;
}

}  // namespace

ConvexityVerdict CheckConvexity(const Region& region, const World& focal,
                                ConvexityNotion notion) {
  switch (notion) {
    case ConvexityNotion::kInterval:
      return CheckInterval(region);
    case ConvexityNotion::kStar:
      return CheckStar(region, focal);
    case ConvexityNotion::kMonotoneGeodesic:
      return CheckMonotone(region, focal);
  }
  return {};
}

absl::StatusOr<ConvexityVerdict> ConvexityCheck(const Classifier& c,
                                                const World& focal,
                                                LabelId target, int radius,
                                                ConvexityNotion notion,
                                                RegionMode mode) {
  absl::StatusOr<Region> region = BuildRegion(c, focal, target, radius, mode);
  if (!region.ok()) return region.status();
  return CheckConvexity(*region, focal, notion);
}

absl::StatusOr<LocalStructureReport> AnalyzeLocalStructure(
    const Classifier& c, const World& focal, LabelId target, int radius,
    RegionMode mode) {
  LocalStructureReport report;
  absl::StatusOr<FlipDegreeResult> flip = FlipDegree(c, focal, target, radius);
  if (!flip.ok()) return flip.status();
  report.flip = *std::move(flip);
  absl::StatusOr<Shape> shape = ClassifyShape(c, focal, target, radius);
  if (!shape.ok()) return shape.status();
  report.shape = *shape;
  absl::StatusOr<Region> region = BuildRegion(c, focal, target, radius, mode);
  if (!region.ok()) return region.status();
  report.region = *std::move(region);
  for (ConvexityNotion notion :
       {ConvexityNotion::kInterval, ConvexityNotion::kStar,
        ConvexityNotion::kMonotoneGeodesic}) {
    report.convexity.push_back(CheckConvexity(report.region, focal, notion));
  }
  return report;
}

uint64_t ClassifierHash(const Classifier& c) {
  uint64_t hash = 14695981039346656037ull;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char ch : bytes) {
      hash ^= ch;
      hash *= 1099511628211ull;
    }
    hash ^= 0xff;
    hash *= 1099511628211ull;
  };
  for (const std::string& name : c.space().names()) mix(name);
  for (const std::string& label : c.labels()) mix(label);
  for (World w : WorldRange(c.width())) mix(c.label_name(c.Predict(w)));
  return hash;
}

absl::StatusOr<HarnessReport> StructureSweep(const std::vector<Classifier>& family,
                                           int radius, RegionMode mode) {
  HarnessReport report;
  for (const char* name : {"interval", "star", "monotone_geodesic"}) {
    report.matrix.counts[name] = {};
  }
  for (const Classifier& original : family) {
    if (original.width() > MaxFeatures()) {
      return absl::ResourceExhaustedError("harness classifier too wide");
    }
    const Classifier c = original.ToTruthTable();
    const int d = radius < 0 ? c.width() : std::min(radius, c.width());
    const uint64_t hash = ClassifierHash(c);
    std::set<LabelId> image;
    for (World w : WorldRange(c.width())) image.insert(c.Predict(w));
    for (World focal : WorldRange(c.width())) {
      const LabelId focal_label = c.Predict(focal);
      for (LabelId target : image) {
        if (target == focal_label) continue;
        absl::StatusOr<LocalStructureReport> local =
            AnalyzeLocalStructure(c, focal, target, d, mode);
        if (!local.ok()) return local.status();
        HarnessRow row;
        row.classifier_hash = hash;
        row.focal = focal;
        row.target = c.label_name(target);
        row.flip_degree = local->flip.degree;
        bool* flags[] = {&row.interval, &row.star, &row.monotone_geodesic};
        const int low = row.flip_degree <= 2 ? 1 : 0;
        for (size_t i = 0; i < local->convexity.size(); ++i) {
          const ConvexityVerdict& v = local->convexity[i];
          *flags[i] = v.convex;
          const std::string name = NotionName(v.notion);
          if (!v.convex) row.counterexamples[name] = v.witness;
          ++report.matrix.counts[name][low][v.convex ? 1 : 0];
        }
        if ((row.interval && !row.star) || (row.star && !row.monotone_geodesic)) {
          ++report.matrix.implication_violations;
        }
        ++report.matrix.rows;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

absl::StatusOr<SpecificityChainResult> CheckSpecificityChain(
    const Classifier& c, const World& focal, LabelId target,
    const std::vector<Formula>& chain) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  if (c.width() > MaxFeatures()) {
    return absl::ResourceExhaustedError("feature space too large to search");
  }
  SpecificityChainResult result;
  std::vector<std::vector<World>> closest;
  for (const Formula& f : chain) {
    if (f.MentionsLabels()) {
      return absl::InvalidArgumentError("antecedents may not mention predictions");
    }
    absl::StatusOr<std::vector<World>> worlds = ClosestWorlds(focal, f, c);
    if (!worlds.ok()) return worlds.status();
    if (worlds->empty()) {
      result.vacuous = true;
      return result;
    }
    closest.push_back(*std::move(worlds));
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    bool forward = true;
    bool backward = true;
    for (World w : WorldRange(c.width())) {
      const bool prev = chain[i].Holds(w, c);
      const bool next = chain[i + 1].Holds(w, c);
      if (next && !prev) forward = false;
      if (prev && !next) backward = false;
    }
    if (!forward || backward) {
      return absl::InvalidArgumentError(absl::StrCat(
          "antecedent ", i + 1, " is not strictly more specific than ", i));
    }
  }
  result.alternating = true;
  for (size_t i = 0; i < closest.size(); ++i) {
    const bool supported =
        std::all_of(closest[i].begin(), closest[i].end(),
                    [&](const World& w) { return c.Predict(w) == target; });
    result.support.push_back(supported);
    if (i > 0 && result.support[i] == result.support[i - 1]) {
      result.alternating = false;
    }
  }
  result.strictly_increasing = true;
  for (size_t i = 0; i + 1 < closest.size(); ++i) {
    if (Distance(closest[i + 1].front(), focal) <= Distance(closest[i].front(), focal)) {
      result.strictly_increasing = false;
    }
  }
  // Depth-first choice of nested witnesses.
  std::vector<World> picked;
  auto search = [&](auto&& self, size_t i) -> bool {
    if (i == closest.size()) return true;
    for (const World& w : closest[i]) {
      if (i > 0) {
        const uint64_t prev = picked.back().bits() ^ focal.bits();
        const uint64_t here = w.bits() ^ focal.bits();
        if ((prev & ~here) != 0 || prev == here) continue;
      }
      picked.push_back(w);
      if (self(self, i + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  result.common_monotone_path = search(search, 0);
  if (result.common_monotone_path) {
    result.witnesses = picked;
  } else {
    for (const auto& worlds : closest) result.witnesses.push_back(worlds.front());
  }
  return result;
}

absl::StatusOr<SpecificityReport> SpecificityCheck(const Classifier& c,
                                                   const World& focal,
                                                   LabelId target, int chains,
                                                   uint64_t seed) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  if (chains < 0) return absl::InvalidArgumentError("chain count must be >= 0");
  Rng rng(seed);
  SpecificityReport report;
  const int width = c.width();
  std::vector<int> order(width);
  for (int i = 0; i < width; ++i) order[i] = i;
  for (int n = 0; n < chains; ++n) {
    ++report.sampled;
    rng.Shuffle(order);
    const int length = 1 + static_cast<int>(rng.Below(width));
    std::vector<Formula> literals;
    std::vector<Formula> chain;
    std::vector<LiteralSet> sets;
    LiteralSet set(width);
    for (int k = 0; k < length; ++k) {
      const bool positive = rng.Coin();
      literals.push_back(Formula::Literal(order[k], positive));
      chain.push_back(Formula::And(literals));
      set = set.With(order[k], positive);
      sets.push_back(set);
    }
    if (rng.Chance(1, 10)) {
      std::vector<Formula> contradiction = literals;
      contradiction.push_back(Formula::Not(literals.front()));
      chain.push_back(Formula::And(std::move(contradiction)));
      absl::StatusOr<SpecificityChainResult> r =
          CheckSpecificityChain(c, focal, target, chain);
      if (!r.ok()) return r.status();
      if (r->vacuous) ++report.vacuous;
      continue;
    }
    // Keep the alternating subsequence, starting at the first supported step.
    std::vector<Formula> kept;
    bool last = false;
    for (size_t k = 0; k < chain.size(); ++k) {
      const bool supported = c.Predict(sets[k].Complete(focal)) == target;
      if ((kept.empty() && supported) || (!kept.empty() && supported != last)) {
        kept.push_back(chain[k]);
        last = supported;
      }
    }
    if (kept.size() < 2) continue;
    ++report.evaluated;
    absl::StatusOr<SpecificityChainResult> r =
        CheckSpecificityChain(c, focal, target, kept);
    if (!r.ok()) return r.status();
    if (!r->strictly_increasing) ++report.strict_distance_violations;
    if (!r->common_monotone_path) ++report.monotone_path_failures;
    if (r->strictly_increasing && r->common_monotone_path) ++report.passed;
  }
  return report;
}

absl::StatusOr<JustificationResult> Justified(const Classifier& c,
                                              const World& y,
                                              const GroundTruthSet& gt) {
  if (gt.points.empty()) {
    return absl::InvalidArgumentError("ground-truth set is empty");
  }
  absl::StatusOr<LabelId> label = Evaluate(c, y);
  if (!label.ok()) return label.status();
  if (c.width() > MaxFeatures()) {
    return absl::ResourceExhaustedError("feature space too large to search");
  }
  std::set<uint64_t> goals;
  for (const auto& [w, observed] : gt.points) {
    if (w.width() != c.width()) {
      return absl::InvalidArgumentError("ground-truth world width mismatch");
    }
    if (observed == *label && c.Predict(w) == *label) goals.insert(w.bits());
  }
  JustificationResult result;
  if (goals.empty()) return result;
  const int width = c.width();
  std::vector<int64_t> parent(uint64_t{1} << width, -2);
  std::deque<World> queue = {y};
  parent[y.bits()] = -1;
  while (!queue.empty()) {
    const World w = queue.front();
    queue.pop_front();
    if (goals.count(w.bits())) {
      for (int64_t at = static_cast<int64_t>(w.bits()); at >= 0; at = parent[at]) {
        result.path.emplace_back(width, static_cast<uint64_t>(at));
      }
      std::reverse(result.path.begin(), result.path.end());
      result.justified = true;
      return result;
    }
    for (int f = 0; f < width; ++f) {
      const World next = w.Flipped(f);
      if (parent[next.bits()] == -2 && c.Predict(next) == *label) {
        parent[next.bits()] = static_cast<int64_t>(w.bits());
        queue.push_back(next);
      }
    }
  }
  return result;
}

}  // namespace xfair
