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

#include "xfair/cf_semantics.h"

#include <algorithm>
#include <bit>

#include "absl/strings/str_cat.h"
#include "xfair/transforms.h"

namespace xfair {

absl::StatusOr<Counterfactual> Counterfactual::Create(Formula antecedent,
                                                      Formula consequent,
                                                      const Classifier& c) {
  if (antecedent.MentionsLabels()) {
    return absl::InvalidArgumentError(
        "counterfactual antecedent may not mention predictions");
  }
  if (absl::Status s = antecedent.Validate(c); !s.ok()) return s;
  if (absl::Status s = consequent.Validate(c); !s.ok()) return s;
  return Counterfactual{std::move(antecedent), std::move(consequent)};
}

std::string Counterfactual::ToString(const Classifier& c) const {
  return absl::StrCat(antecedent.ToString(c), " => ", consequent.ToString(c));
}

absl::StatusOr<Counterfactual> ParseCounterfactual(std::string_view text,
                                                   const Classifier& c) {
  const size_t arrow = text.find("=>");
  if (arrow == std::string_view::npos) {
    return absl::InvalidArgumentError("counterfactual needs '=>'");
  }
  absl::StatusOr<Formula> antecedent = ParseFormula(text.substr(0, arrow), c);
  if (!antecedent.ok()) return antecedent.status();
  absl::StatusOr<Formula> consequent = ParseFormula(text.substr(arrow + 2), c);
  if (!consequent.ok()) return consequent.status();
  return Counterfactual::Create(*std::move(antecedent), *std::move(consequent),
                                c);
}

absl::StatusOr<bool> Satisfies(const World& w, const Formula& f,
                               const Classifier& c) {
  if (w.width() != c.width()) {
    return absl::InvalidArgumentError("world width mismatch");
  }
  if (absl::Status s = f.Validate(c); !s.ok()) return s;
  return f.Holds(w, c);
}

absl::StatusOr<std::vector<World>> ClosestWorlds(const World& w,
                                                 const Formula& f,
                                                 const Classifier& c) {
  if (w.width() != c.width()) {
    return absl::InvalidArgumentError("world width mismatch");
  }
  if (absl::Status s = f.Validate(c); !s.ok()) return s;
  if (c.width() > MaxFeatures()) {
    return absl::ResourceExhaustedError("feature space too large to search");
  }
  std::vector<World> out;
  for (int k = 0; k <= c.width() && out.empty(); ++k) {
    ForEachIndexSet(c.width(), k, k, [&](uint64_t mask) {
      const World candidate = w.Xor(mask);
      if (f.Holds(candidate, c)) out.push_back(candidate);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<bool> EvalCounterfactual(const World& w,
                                        const Counterfactual& cf,
                                        const Classifier& c) {
  if (cf.antecedent.MentionsLabels()) {
    return absl::InvalidArgumentError(
        "counterfactual antecedent may not mention predictions");
  }
  absl::StatusOr<std::vector<World>> closest = ClosestWorlds(w, cf.antecedent, c);
  if (!closest.ok()) return closest.status();
  if (absl::Status s = cf.consequent.Validate(c); !s.ok()) return s;
  return std::all_of(closest->begin(), closest->end(), [&](const World& v) {
    return cf.consequent.Holds(v, c);
  });
}

std::vector<LiteralSet> AllConjunctions(int width, int max_size) {
  std::vector<LiteralSet> out;
  ForEachIndexSet(width, 1, max_size, [&](uint64_t mask) {
    for (uint64_t values = mask;; values = (values - 1) & mask) {
      out.emplace_back(width, mask, values);
      if (values == 0) break;
    }
    return true;
  });
  return out;
}

namespace {

constexpr int kMaxFullBooleanWidth = 4;

void AddFullBooleanMembers(const Classifier& c, const World& focal,
                           LabelId target, int radius,
                           CompleteExplanation& out) {
  const int width = c.width();
  const int worlds = 1 << width;
  std::vector<bool> has_target(worlds);
  std::vector<int> distance(worlds);
  for (int v = 0; v < worlds; ++v) {
    has_target[v] = c.Predict(World(width, v)) == target;
    distance[v] = std::popcount(static_cast<uint64_t>(v) ^ focal.bits());
  }
  // An antecedent is identified with its set of satisfying worlds.
  const uint64_t sets = uint64_t{1} << worlds;
  for (uint64_t set = 1; set < sets; ++set) {
    int best = width + 1;
    for (int v = 0; v < worlds; ++v) {
      if ((set >> v) & 1) best = std::min(best, distance[v]);
    }
    if (best > radius) continue;
    bool all_target = true;
    std::vector<World> closest;
    for (int v = 0; v < worlds && all_target; ++v) {
      if (((set >> v) & 1) && distance[v] == best) {
        all_target = has_target[v];
        closest.emplace_back(width, v);
      }
    }
    if (!all_target) continue;
    std::vector<Formula> minterms;
    for (int v = 0; v < worlds; ++v) {
      if ((set >> v) & 1) {
        minterms.push_back(Formula::Conjunction(LiteralSet::Of(World(width, v))));
      }
    }
    out.members.push_back(
        ExplanationMember{Counterfactual{Formula::Or(std::move(minterms)),
                                         Formula::Label(target)},
                          std::nullopt, std::move(closest), best});
  }
}

}  // namespace

absl::StatusOr<CompleteExplanation> CompleteExplanationFor(
    const Classifier& c, const World& focal, LabelId target, int radius,
    AntecedentMode mode) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  if (radius < 0) return absl::InvalidArgumentError("radius must be >= 0");
  radius = std::min(radius, c.width());
  CompleteExplanation out{focal, target, radius, {}};
  if (mode == AntecedentMode::kFullBoolean) {
    if (c.width() > kMaxFullBooleanWidth) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "full Boolean antecedents refused for ", c.width(),
          " features (limit ", kMaxFullBooleanWidth, ")"));
    }
    AddFullBooleanMembers(c, focal, target, radius, out);
    return out;
  }
  if (c.width() > MaxFeatures()) {
    return absl::ResourceExhaustedError("feature space too large to search");
  }
  // A consistent conjunction has exactly one closest world: the focal point
  // with the literals written over it.
  for (const LiteralSet& literals : AllConjunctions(c.width(), c.width())) {
    const World image = literals.Complete(focal);
    const int distance = Distance(image, focal);
    if (distance > radius || c.Predict(image) != target) continue;
    out.members.push_back(ExplanationMember{
        Counterfactual{Formula::Conjunction(literals), Formula::Label(target)},
        literals, {image}, distance});
  }
  return out;
}

absl::StatusOr<CorrespondenceReport> CorrespondenceCheck(const Classifier& c,
                                                         const World& focal,
                                                         LabelId target) {
  if (absl::Status s = CheckFocalQuery(c, focal, target); !s.ok()) return s;
  CorrespondenceReport report;
  const Formula consequent = Formula::Label(target);
  for (const LiteralSet& literals : AllConjunctions(c.width(), c.width())) {
    absl::StatusOr<bool> lewis = EvalCounterfactual(
        focal, Counterfactual{Formula::Conjunction(literals), consequent}, c);
    if (!lewis.ok()) return lewis.status();
    const Transformation t(literals);
    absl::StatusOr<Appropriateness> kind = Classify(t, c, focal, target);
    if (!kind.ok()) return kind.status();
    const bool transformation =
        kind->minimally_appropriate && literals.SatisfiedBy(t.Apply(focal));
    ++report.checked;
    if (*lewis == transformation) {
      ++report.agreements;
    } else {
      report.mismatches.push_back({literals, *lewis, transformation});
    }
  }
  return report;
}

absl::StatusOr<std::vector<World>> BoundaryFromCounterfactuals(
    const Classifier& c, const World& focal, LabelId target, int radius) {
  absl::StatusOr<CompleteExplanation> s =
      CompleteExplanationFor(c, focal, target, radius);
  if (!s.ok()) return s.status();
  std::vector<LiteralSet> antecedents;
  for (const ExplanationMember& m : s->members) antecedents.push_back(*m.literals);
  std::vector<World> out;
  for (const LiteralSet& a : antecedents) {
    const bool minimal = std::none_of(
        antecedents.begin(), antecedents.end(),
        [&a](const LiteralSet& b) { return b != a && b.SubsetOf(a); });
    if (!minimal) continue;
    absl::StatusOr<std::vector<World>> closest =
        ClosestWorlds(focal, Formula::Conjunction(a), c);
    if (!closest.ok()) return closest.status();
    out.insert(out.end(), closest->begin(), closest->end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace xfair
