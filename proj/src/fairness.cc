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

#include "xfair/fairness.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace xfair {

absl::StatusOr<PrejudicialFactor> PrejudicialFactor::Create(std::string name,
                                                            Transformation map) {
  if (name.empty()) {
    return absl::InvalidArgumentError("prejudicial factor needs a name");
  }
  if (map.size() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prejudicial factor '", name, "' must set at least one dimension"));
  }
  return PrejudicialFactor(std::move(name), map);
}

absl::StatusOr<std::optional<BiasWitness>> BiasedDependency(
    const Classifier& c, const PrejudicialFactor& factor, const World& focal,
    int radius) {
  if (focal.width() != c.width() || factor.map().width() != c.width()) {
    return absl::InvalidArgumentError("width mismatch");
  }
  if (radius < 0) return absl::InvalidArgumentError("radius must be >= 0");
  const LabelId eta = c.Predict(focal);
  const LabelId pi = c.Predict(factor.Apply(focal));
  std::optional<BiasWitness> found;
  if (eta == pi) return found;
  ForEachIndexSet(c.width(), 1, std::min(radius, c.width()), [&](uint64_t mask) {
    const World moved = focal.Xor(mask);
    if (c.Predict(moved) == eta && c.Predict(factor.Apply(moved)) == pi) {
      found = BiasWitness{Transformation::Flip(focal, mask), eta, pi};
      return false;
    }
    return true;
  });
  return found;
}

namespace {

using TruthVector = std::vector<uint64_t>;

struct Candidate {
  Formula formula;
  TruthVector truth;
};

}  // namespace

absl::StatusOr<Definability> ImplicitlyDefinable(
    const Classifier& c, const PrejudicialFactor& factor,
    const std::vector<World>& population) {
  if (population.empty()) {
    return absl::InvalidArgumentError("population must be non-empty");
  }
  if (c.width() > 10) {
    return absl::ResourceExhaustedError(
        "definability search is limited to 10 features");
  }
  const size_t words = (population.size() + 63) / 64;
  auto truth_of = [&](auto&& holds) {
    TruthVector t(words, 0);
    for (size_t i = 0; i < population.size(); ++i) {
      if (holds(population[i])) t[i / 64] |= uint64_t{1} << (i % 64);
    }
    return t;
  };
  for (const World& w : population) {
    if (w.width() != c.width()) {
      return absl::InvalidArgumentError("population world width mismatch");
    }
  }
  const TruthVector goal =
      truth_of([&](const World& w) { return factor.Fixes(w); });
  TruthVector mask(words, ~uint64_t{0});
  if (population.size() % 64 != 0) {
    mask.back() = (uint64_t{1} << (population.size() % 64)) - 1;
  }

  Definability out;
  out.degenerate = population.size() == 1;
  std::set<TruthVector> seen;
  // levels[k]: distinct-truth formulas with exactly k nodes.
  std::vector<std::vector<Candidate>> levels(kMaxDefinabilitySize + 1);
  auto offer = [&](int size, Formula f, TruthVector t) {
    if (!seen.insert(t).second) return false;
    const bool hit = t == goal;
    levels[size].push_back({std::move(f), std::move(t)});
    if (hit) {
      out.formula = levels[size].back().formula;
      out.size = size;
    }
    return hit;
  };
  for (int f = 0; f < c.width(); ++f) {
    if (offer(1, Formula::Feature(f),
              truth_of([f](const World& w) { return w.Get(f); }))) {
      return out;
    }
  }
  for (int size = 2; size <= kMaxDefinabilitySize; ++size) {
    for (size_t i = 0; i < levels[size - 1].size(); ++i) {
      const Candidate& a = levels[size - 1][i];
      TruthVector t(words);
      for (size_t k = 0; k < words; ++k) t[k] = ~a.truth[k] & mask[k];
      if (offer(size, Formula::Not(a.formula), std::move(t))) return out;
    }
    for (const bool conjunction : {true, false}) {
      for (int left = 1; left <= size - 2; ++left) {
        const int right = size - 1 - left;
        if (right < left) break;
        const size_t left_count = levels[left].size();
        const size_t right_count = levels[right].size();
        for (size_t i = 0; i < left_count; ++i) {
          for (size_t j = (left == right ? i + 1 : 0); j < right_count; ++j) {
            const Candidate& a = levels[left][i];
            const Candidate& b = levels[right][j];
            TruthVector t(words);
            for (size_t k = 0; k < words; ++k) {
              t[k] = conjunction ? (a.truth[k] & b.truth[k])
                                 : (a.truth[k] | b.truth[k]);
            }
            if (seen.count(t)) continue;
            std::vector<Formula> parts = {a.formula, b.formula};
            Formula f = conjunction ? Formula::And(std::move(parts))
                                    : Formula::Or(std::move(parts));
            if (offer(size, std::move(f), std::move(t))) return out;
          }
        }
      }
    }
  }
  return out;
}

absl::StatusOr<ConundrumSpec> ConundrumSpec::Incompleteness(int width,
                                                            uint64_t attended) {
  if ((attended & ~FullMask(width)) != 0) {
    return absl::InvalidArgumentError("attended dimensions out of range");
  }
  if (attended == FullMask(width)) {
    return absl::InvalidArgumentError(
        "an incompleteness conundrum needs at least one unattended dimension");
  }
  ConundrumSpec spec;
  spec.kind_ = ConundrumKind::kCI;
  spec.width_ = width;
  spec.attended_ = attended;
  return spec;
}

absl::StatusOr<ConundrumSpec> ConundrumSpec::Mistake(int width,
                                                     uint64_t mistaken,
                                                     LiteralSet believed) {
  if (mistaken == 0 || (mistaken & ~FullMask(width)) != 0) {
    return absl::InvalidArgumentError(
        "a mistake conundrum needs a non-empty set of in-range dimensions");
  }
  if (believed.width() == 0) believed = LiteralSet(width);
  if (believed.width() != width || (believed.mask() & ~mistaken) != 0) {
    return absl::InvalidArgumentError(
        "believed values must lie on the mistaken dimensions");
  }
  ConundrumSpec spec;
  spec.kind_ = ConundrumKind::kCM;
  spec.width_ = width;
  spec.attended_ = mistaken;
  spec.mistaken_ = mistaken;
  spec.believed_ = believed;
  return spec;
}

std::vector<Constraint> ConstraintsFor(
    const ConundrumSpec& spec, const std::vector<PrejudicialFactor>& factors) {
  std::vector<Constraint> out = {{false, -1, spec.Name()}};
  for (size_t i = 0; i < factors.size(); ++i) {
    out.push_back({true, static_cast<int>(i),
                   absl::StrCat("CB:", factors[i].name())});
  }
  return out;
}

bool Discharges(const Constraint& constraint, const ConundrumSpec& spec,
                const std::vector<PrejudicialFactor>& factors,
                const World& focal, LabelId target, const Transformation& delta,
                LabelId image_label) {
  if (image_label != target) return false;
  const World image = delta.Apply(focal);
  if (constraint.is_factor) return factors[constraint.factor].Fixes(image);
  const uint64_t changed = image.bits() ^ focal.bits();
  if (changed == 0) return false;
  const uint64_t allowed = spec.kind() == ConundrumKind::kCI ? spec.unattended()
                                                             : spec.mistaken();
  return (changed & ~allowed) == 0;
}

bool Discharges(const Constraint& constraint, const ConundrumSpec& spec,
                const std::vector<PrejudicialFactor>& factors,
                const Classifier& c, const World& focal, LabelId target,
                const Transformation& delta) {
  return Discharges(constraint, spec, factors, focal, target, delta,
                    c.Predict(delta.Apply(focal)));
}

namespace {

ConstraintVerdict CheckOne(const Constraint& constraint,
                           const ConundrumSpec& spec,
                           const std::vector<PrejudicialFactor>& factors,
                           const Classifier& c, const World& focal,
                           LabelId target,
                           const std::vector<Transformation>& deltas) {
  ConstraintVerdict verdict{constraint.name, false, std::nullopt, ""};
  for (const Transformation& t : deltas) {
    if (Discharges(constraint, spec, factors, c, focal, target, t)) {
      verdict.satisfied = true;
      verdict.witness = t;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace

ConstraintVerdict CheckCI(const Classifier& c, const World& focal,
                          LabelId target, const ConundrumSpec& spec,
                          const std::vector<Transformation>& deltas) {
  ConstraintVerdict verdict =
      CheckOne({false, -1, "CI"}, spec, {}, c, focal, target, deltas);
  if (!verdict.satisfied) {
    verdict.diagnostic =
        "no transformation changes only unattended dimensions and reaches the "
        "target";
  }
  return verdict;
}

ConstraintVerdict CheckCM(const Classifier& c, const World& focal,
                          LabelId target, const ConundrumSpec& spec,
                          const std::vector<Transformation>& deltas) {
  ConstraintVerdict verdict =
      CheckOne({false, -1, "CM"}, spec, {}, c, focal, target, deltas);
  if (!verdict.satisfied) {
    const LiteralSet& believed = spec.believed();
    const bool at_belief = believed.width() == focal.width() &&
                           believed.SatisfiedBy(focal);
    verdict.diagnostic =
        at_belief ? "belief unconfirmable"
                  : "no transformation changes only the mistaken dimensions "
                    "and reaches the target";
  }
  return verdict;
}

std::vector<ConstraintVerdict> CheckCBPerFactor(
    const Classifier& c, const World& focal, LabelId target,
    const std::vector<PrejudicialFactor>& factors,
    const std::vector<Transformation>& deltas) {
  std::vector<ConstraintVerdict> out;
  const ConundrumSpec unused;
  for (size_t i = 0; i < factors.size(); ++i) {
    const Constraint constraint{true, static_cast<int>(i),
                                absl::StrCat("CB:", factors[i].name())};
    ConstraintVerdict verdict =
        CheckOne(constraint, unused, factors, c, focal, target, deltas);
    if (!verdict.satisfied) {
      verdict.diagnostic =
          "no transformation reaches the target at a point the factor fixes";
    }
    out.push_back(std::move(verdict));
  }
  return out;
}

ConstraintVerdict CheckCB(const Classifier& c, const World& focal,
                          LabelId target,
                          const std::vector<PrejudicialFactor>& factors,
                          const std::vector<Transformation>& deltas) {
  ConstraintVerdict verdict{"CB", true, std::nullopt, ""};
  std::vector<std::string> failing;
  for (const ConstraintVerdict& v :
       CheckCBPerFactor(c, focal, target, factors, deltas)) {
    if (!v.satisfied) failing.push_back(v.constraint);
  }
  if (!failing.empty()) {
    verdict.satisfied = false;
    verdict.diagnostic = absl::StrCat("unresolved: ", absl::StrJoin(failing, ", "));
  }
  return verdict;
}

absl::StatusOr<FairAdequateSet> ComputeFairAdequateSet(
    const Classifier& c, const World& focal, LabelId target, int radius,
    const ConundrumSpec& spec, const std::vector<PrejudicialFactor>& factors) {
  if (spec.width() != c.width()) {
    return absl::InvalidArgumentError("conundrum width mismatch");
  }
  for (const PrejudicialFactor& p : factors) {
    if (p.map().width() != c.width()) {
      return absl::InvalidArgumentError(
          absl::StrCat("factor '", p.name(), "' width mismatch"));
    }
  }
  absl::StatusOr<std::vector<Transformation>> candidates =
      AppropriateTransformations(c, focal, target, radius);
  if (!candidates.ok()) return candidates.status();
  const std::vector<Constraint> constraints = ConstraintsFor(spec, factors);
  const size_t nc = constraints.size();
  // covers[k][j]: candidate k discharges constraint j.
  std::vector<std::vector<bool>> covers(candidates->size(),
                                        std::vector<bool>(nc, false));
  for (size_t j = 0; j < nc; ++j) {
    bool any = false;
    for (size_t k = 0; k < candidates->size(); ++k) {
      covers[k][j] = Discharges(constraints[j], spec, factors, c, focal, target,
                                (*candidates)[k]);
      any = any || covers[k][j];
    }
    if (!any) {
      return absl::FailedPreconditionError(absl::StrCat(
          "infeasible: no appropriate transformation within radius ",
          std::min(radius, c.width()), " satisfies ", constraints[j].name));
    }
  }
  std::vector<bool> covered(nc, false);
  std::vector<size_t> chosen;
  while (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    size_t best = 0;
    int best_gain = -1;
    for (size_t k = 0; k < candidates->size(); ++k) {
      int gain = 0;
      for (size_t j = 0; j < nc; ++j) gain += covers[k][j] && !covered[j];
      if (gain > best_gain) {
        best_gain = gain;
        best = k;
      }
    }
    chosen.push_back(best);
    for (size_t j = 0; j < nc; ++j) covered[j] = covered[j] || covers[best][j];
  }
  for (size_t i = 0; i < chosen.size();) {
    bool redundant = true;
    for (size_t j = 0; j < nc && redundant; ++j) {
      bool other = false;
      for (size_t k = 0; k < chosen.size(); ++k) {
        if (k != i && covers[chosen[k]][j]) other = true;
      }
      redundant = other;
    }
    if (redundant) {
      chosen.erase(chosen.begin() + i);
    } else {
      ++i;
    }
  }
  std::sort(chosen.begin(), chosen.end());

  FairAdequateSet out;
  out.radius = std::min(radius, c.width());
  for (size_t k : chosen) out.deltas.push_back((*candidates)[k]);
  for (const Constraint& constraint : constraints) {
    out.certificates.push_back(
        CheckOne(constraint, spec, factors, c, focal, target, out.deltas));
  }
  absl::StatusOr<OverdeterminationSet> over =
      MinimalCounterfactuals(c, focal, target, radius);
  if (!over.ok()) return over.status();
  out.overdetermination = *std::move(over);
  return out;
}

}  // namespace xfair
