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

// Explanation games between an explainee, who holds a conundrum, and an
// adversary, who holds the classifier.
//
// The explainee opens with a request or a challenge; the adversary answers
// every move. Restriction games allow only ACCEPT and N_REQUEST (give me some
// new transformation). Forcing games add P_REQUEST (give me the flip on these
// indices). Challenge games add CHALLENGE (I claim these literals yield the
// target), which the adversary must confirm or correct. The explainee wins by
// accepting proposals that jointly resolve the conundrum and every declared
// prejudicial factor.

#ifndef XFAIR_GAME_H_
#define XFAIR_GAME_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "xfair/abduction.h"
#include "xfair/fairness.h"
#include "xfair/families.h"
#include "xfair/feature_model.h"
#include "xfair/transforms.h"

namespace xfair {

enum class Variant { kRestriction, kForcing, kChallenge };
enum class AdversaryPolicy { kCooperative, kAdversarial };
enum class MoveKind { kAccept, kNRequest, kPRequest, kChallenge };
enum class ReplyKind { kPropose, kCorrect, kConfirm, kExhausted, kAck };
enum class GameStatus { kOpen, kWon, kAbandoned };

std::string VariantName(Variant v);
std::string PolicyName(AdversaryPolicy p);
std::string MoveKindName(MoveKind k);
std::string ReplyKindName(ReplyKind k);
std::string StatusName(GameStatus s);

absl::StatusOr<Variant> ParseVariant(std::string_view name);
absl::StatusOr<AdversaryPolicy> ParsePolicy(std::string_view name);
absl::StatusOr<MoveKind> ParseMoveKind(std::string_view name);

struct Move {
  MoveKind kind = MoveKind::kNRequest;
  uint64_t indices = 0;  // P_REQUEST.
  LiteralSet literals;   // CHALLENGE.

  static Move Accept() { return {MoveKind::kAccept, 0, {}}; }
  static Move NRequest() { return {MoveKind::kNRequest, 0, {}}; }
  static Move PRequest(uint64_t indices) {
    return {MoveKind::kPRequest, indices, {}};
  }
  static Move Challenge(LiteralSet literals) {
    return {MoveKind::kChallenge, 0, literals};
  }

  bool operator==(const Move&) const = default;
};

struct Reply {
  ReplyKind kind = ReplyKind::kAck;
  std::optional<Transformation> delta;
  LabelId label = -1;  // Label of the image of delta.
  // CORRECT: the completed literal set. CONFIRM: the challenged set.
  std::optional<LiteralSet> literals;

  bool operator==(const Reply&) const = default;
};

struct GameConfig {
  Classifier classifier;
  World focal;
  LabelId target = 0;
  int radius = 0;
  Variant variant = Variant::kRestriction;
  ConundrumSpec conundrum;
  std::vector<PrejudicialFactor> factors;
  AdversaryPolicy policy = AdversaryPolicy::kAdversarial;
  uint64_t seed = 0;
};

GameConfig MakeConfig(const Classifier& c, const FairnessInstance& instance,
                      Variant variant, AdversaryPolicy policy,
                      uint64_t seed = 0);

struct Counters {
  int64_t explainee_moves = 0;
  // Entailment queries plus classifier evaluations made while replying.
  int64_t adversary_oracle_calls = 0;

  bool operator==(const Counters&) const = default;
};

struct Proposal {
  Transformation delta;
  LabelId label = 0;
  bool accepted = false;
};

struct TranscriptEntry {
  Move move;
  Reply reply;
  Counters counters;  // After the reply.
};

class Game {
 public:
  // Fails with FailedPrecondition when no fair-and-adequate set exists within
  // the radius, and InvalidArgument on malformed configs.
  static absl::StatusOr<Game> Create(GameConfig config);

  const GameConfig& config() const { return config_; }
  GameStatus status() const { return status_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<Proposal>& proposals() const { return proposals_; }
  const Counters& counters() const { return counters_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Per constraint, whether the accepted proposals discharge it.
  std::vector<bool> Resolved() const;
  // Per constraint, whether any proposal seen so far discharges it.
  std::vector<bool> Observed() const;
  bool WinningCheck() const;

  // Empty once the game is closed.
  std::vector<MoveKind> LegalMoves() const;
  absl::Status CheckLegal(const Move& move) const;

  // FailedPrecondition for illegal moves and closed games.
  absl::StatusOr<Reply> Play(const Move& move);

  void Abandon();

  // The adversary's private target set.
  const FairAdequateSet& hidden() const { return hidden_; }

 private:
  Game(GameConfig config, FairAdequateSet hidden,
       std::vector<Transformation> candidates);

  int UncoveredDischarged(const Transformation& t,
                          const std::vector<bool>& covered) const;
  void Record(const Transformation& t, LabelId label);
  Reply ReplyToNRequest();
  Reply ReplyToPRequest(uint64_t indices);
  absl::StatusOr<Reply> ReplyToChallenge(const LiteralSet& literals);
  Reply ReplyToAccept();

  GameConfig config_;
  FairAdequateSet hidden_;
  std::vector<Transformation> candidates_;  // Appropriate, canonical order.
  std::vector<Constraint> constraints_;
  std::vector<Proposal> proposals_;
  std::vector<TranscriptEntry> transcript_;
  Counters counters_;
  GameStatus status_ = GameStatus::kOpen;
  EntailmentOracle oracle_;
};

enum class ExplaineePolicy {
  // N_REQUEST until the observed proposals resolve everything, then ACCEPT.
  kExhaustive,
  // Forcing only: descends over index sets with P_REQUESTs.
  kDirectedLocalSearch,
  // Challenge only: one CHALLENGE per unresolved constraint, then ACCEPT.
  kConundrumChallenger,
};

std::string ExplaineePolicyName(ExplaineePolicy p);
absl::StatusOr<ExplaineePolicy> ParseExplaineePolicy(std::string_view name);

struct SimulationResult {
  GameStatus status = GameStatus::kOpen;
  std::vector<TranscriptEntry> transcript;
  Counters counters;
  double wall_seconds = 0;
  // Directed local search: cost after each accepted step.
  std::vector<int> cost_trace;
  int hidden_size = 0;
};

absl::StatusOr<SimulationResult> Simulate(const GameConfig& config,
                                          ExplaineePolicy policy,
                                          int max_moves);

struct Descent {
  World end;
  std::vector<int> trace;  // Cost at each visited world.
};

struct FlipSearchResult {
  std::vector<World> targets;    // Cost m - j for the j-th, 1-based.
  std::vector<World> solutions;  // Distinct target worlds reached.
  std::vector<Descent> descents;
};

// Cost of a world: m - j if it is the j-th target, otherwise m.
int FlipCost(const std::vector<World>& targets, int m, const World& w);

// Hill descent over single-bit flips from the focal point, restarted with
// fresh neighbor orders until m distinct targets are reached or 8*m*n
// descents have run. Targets are the first m boundary worlds, topped up with
// other target-label worlds in canonical order.
absl::StatusOr<FlipSearchResult> FlipLocalSearch(const Classifier& c,
                                                 const World& focal,
                                                 LabelId target, int m,
                                                 uint64_t seed);

struct Scenario {
  std::string name;
  std::string description;
  GameConfig config;
};

std::vector<Scenario> BuiltinScenarios();

}  // namespace xfair

#endif  // XFAIR_GAME_H_
