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

// JSON documents for classifiers, instances, transformations, conundrum
// configs, games and harness rows. Output keeps insertion order so that
// serialized documents are byte-stable.

#ifndef XFAIR_IO_H_
#define XFAIR_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "xfair/fairness.h"
#include "xfair/feature_model.h"
#include "xfair/game.h"
#include "xfair/structure.h"
#include "xfair/transforms.h"

namespace xfair {

using Json = nlohmann::ordered_json;

absl::StatusOr<Json> ParseJson(std::string_view text);
absl::StatusOr<Json> ReadJsonFile(const std::string& path);

// {"features": [...], "labels": [...], "repr": {"type": "rules" | "truth_table"
// | "tree", ...}}.
absl::StatusOr<Classifier> ClassifierFromJson(const Json& doc);
Json ClassifierToJson(const Classifier& c);

// {"bits": "0101"} or {"values": {"name": bool, ...}} (every feature given).
absl::StatusOr<World> WorldFromJson(const Json& doc, const FeatureSpace& space);

absl::StatusOr<LabelId> LabelFromJson(const Json& doc, const Classifier& c);

// {"set": {"name": bool, ...}}.
absl::StatusOr<Transformation> TransformationFromJson(const Json& doc,
                                                      const FeatureSpace& space);
Json TransformationToJson(const Transformation& t, const FeatureSpace& space);

// {"literals": {"name": bool, ...}}.
absl::StatusOr<LiteralSet> LiteralSetFromJson(const Json& doc,
                                              const FeatureSpace& space);
Json LiteralSetToJson(const LiteralSet& l, const FeatureSpace& space);

// Index set as a list of feature names.
absl::StatusOr<uint64_t> IndicesFromJson(const Json& doc,
                                         const FeatureSpace& space);
Json IndicesToJson(uint64_t mask, const FeatureSpace& space);

struct ConundrumConfig {
  ConundrumSpec spec;
  std::vector<PrejudicialFactor> factors;
  bool has_spec = false;
};

// {"conundrum": {"kind": "CI", "attended": [...]}} or {"kind": "CM",
// "mistaken": [...], "believed": {"name": bool}}, with an optional "factors":
// [{"name": ..., "set": {...}}]. Either part may be absent.
absl::StatusOr<ConundrumConfig> ConundrumConfigFromJson(
    const Json& doc, const FeatureSpace& space);
Json ConundrumToJson(const ConundrumSpec& spec, const FeatureSpace& space);
Json FactorToJson(const PrejudicialFactor& p, const FeatureSpace& space);

// {"scenario": name} or {"model": classifier, "instance": world, "target":
// label, "radius": int, "variant": ..., "policy": ..., "seed": int,
// "conundrum": {...}, "factors": [...]}.
absl::StatusOr<GameConfig> GameConfigFromJson(const Json& doc);

// {"kind": "P_REQUEST", "indices": [...]} or {"kind": "CHALLENGE",
// "literals": {...}} or {"kind": "ACCEPT" | "N_REQUEST"}.
absl::StatusOr<Move> MoveFromJson(const Json& doc, const FeatureSpace& space);
Json MoveToJson(const Move& m, const FeatureSpace& space);
Json ReplyToJson(const Reply& r, const Classifier& c);
Json CountersToJson(const Counters& c);
Json TranscriptToJson(const std::vector<TranscriptEntry>& transcript,
                      const Classifier& c);

// Everything the explainee may see: no classifier, no hidden set, no
// unproposed transformation.
Json PublicStateToJson(const Game& game);

Json ConstraintVerdictToJson(const ConstraintVerdict& v,
                             const FeatureSpace& space);
Json HarnessRowToJson(const HarnessRow& row);
Json AgreementMatrixToJson(const AgreementMatrix& m);

}  // namespace xfair

#endif  // XFAIR_IO_H_
