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

#include "xfair/game.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <set>

#include "absl/strings/str_cat.h"
#include "xfair/rng.h"

namespace xfair {

std::string VariantName(Variant v) {
  switch (v) {
    case Variant::kRestriction:
      return "restriction";
    case Variant::kForcing:
      return "forcing";
    case Variant::kChallenge:
      return "challenge";
  }
  return "";
}

std::string PolicyName(AdversaryPolicy p) {
  return p == AdversaryPolicy::kCooperative ? "cooperative" : "adversarial";
}

std::string MoveKindName(MoveKind k) {
  switch (k) {
    case MoveKind::kAccept:
      return "ACCEPT";
    case MoveKind::kNRequest:
      return "N_REQUEST";
    case MoveKind::kPRequest:
      return "P_REQUEST";
    case MoveKind::kChallenge:
      return "CHALLENGE";
  }
  return "";
}

std::string ReplyKindName(ReplyKind k) {
  switch (k) {
    case ReplyKind::kPropose:
      return "PROPOSE";
    case ReplyKind::kCorrect:
      return "CORRECT";
    case ReplyKind::kConfirm:
      return "CONFIRM";
    case ReplyKind::kExhausted:
      return "EXHAUSTED";
    case ReplyKind::kAck:
      return "ACK";
  }
  return "";
}

std::string StatusName(GameStatus s) {
  switch (s) {
    case GameStatus::kOpen:
      return "open";
    case GameStatus::kWon:
      return "won";
    case GameStatus::kAbandoned:
      return "abandoned";
  }
  return "";
}

absl::StatusOr<Variant> ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kRestriction, Variant::kForcing, Variant::kChallenge}) {
    if (VariantName(v) == name) return v;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown variant '", std::string(name),
                   "' (restriction, forcing, challenge)"));
}

absl::StatusOr<AdversaryPolicy> ParsePolicy(std::string_view name) {
  for (AdversaryPolicy p :
       {AdversaryPolicy::kCooperative, AdversaryPolicy::kAdversarial}) {
    if (PolicyName(p) == name) return p;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown adversary policy '", std::string(name), "'"));
}

absl::StatusOr<MoveKind> ParseMoveKind(std::string_view name) {
  for (MoveKind k : {MoveKind::kAccept, MoveKind::kNRequest, MoveKind::kPRequest,
                     MoveKind::kChallenge}) {
    if (MoveKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown move kind '", std::string(name), "'"));
}

GameConfig MakeConfig(const Classifier& c, const FairnessInstance& instance,
                      Variant variant, AdversaryPolicy policy, uint64_t seed) {
  return GameConfig{c,       instance.focal, instance.target,  instance.radius,
                    variant, instance.spec,  instance.factors, policy,
                    seed};
}

absl::StatusOr<Game> Game::Create(GameConfig config) {
  const Classifier& c = config.classifier;
  if (c.width() == 0) return absl::InvalidArgumentError("config has no classifier");
  if (config.radius < 0) return absl::InvalidArgumentError("radius must be >= 0");
  absl::StatusOr<FairAdequateSet> hidden =
      ComputeFairAdequateSet(c, config.focal, config.target, config.radius,
                             config.conundrum, config.factors);
  if (!hidden.ok()) return hidden.status();
  absl::StatusOr<std::vector<Transformation>> candidates =
      AppropriateTransformations(c, config.focal, config.target, config.radius);
  if (!candidates.ok()) return candidates.status();
  return Game(std::move(config), *std::move(hidden), *std::move(candidates));
}

Game::Game(GameConfig config, FairAdequateSet hidden,
           std::vector<Transformation> candidates)
    : config_(std::move(config)),
      hidden_(std::move(hidden)),
      candidates_(std::move(candidates)),
      constraints_(ConstraintsFor(config_.conundrum, config_.factors)) {}

namespace {

std::vector<bool> Coverage(const GameConfig& config,
                           const std::vector<Constraint>& constraints,
                           const std::vector<Proposal>& proposals,
                           bool accepted_only) {
  std::vector<bool> out(constraints.size(), false);
  for (const Proposal& p : proposals) {
    if (accepted_only && !p.accepted) continue;
    for (size_t j = 0; j < constraints.size(); ++j) {
      out[j] = out[j] || Discharges(constraints[j], config.conundrum,
                                    config.factors, config.focal, config.target,
                                    p.delta, p.label);
    }
  }
  return out;
}

bool All(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace

std::vector<bool> Game::Resolved() const {
  return Coverage(config_, constraints_, proposals_, true);
}

std::vector<bool> Game::Observed() const {
  return Coverage(config_, constraints_, proposals_, false);
}

bool Game::WinningCheck() const {
  std::vector<Transformation> accepted;
  for (const Proposal& p : proposals_) {
    if (p.accepted) accepted.push_back(p.delta);
  }
  if (accepted.empty()) return false;
  const Classifier& c = config_.classifier;
  const ConstraintVerdict conundrum =
      config_.conundrum.kind() == ConundrumKind::kCI
          ? CheckCI(c, config_.focal, config_.target, config_.conundrum, accepted)
          : CheckCM(c, config_.focal, config_.target, config_.conundrum, accepted);
  return conundrum.satisfied &&
         CheckCB(c, config_.focal, config_.target, config_.factors, accepted)
             .satisfied;
}

std::vector<MoveKind> Game::LegalMoves() const {
  if (status_ != GameStatus::kOpen) return {};
  std::vector<MoveKind> out;
  if (!proposals_.empty()) out.push_back(MoveKind::kAccept);
  out.push_back(MoveKind::kNRequest);
  if (config_.variant == Variant::kForcing) out.push_back(MoveKind::kPRequest);
  if (config_.variant == Variant::kChallenge) out.push_back(MoveKind::kChallenge);
  return out;
}

absl::Status Game::CheckLegal(const Move& move) const {
  if (status_ != GameStatus::kOpen) {
    return absl::FailedPreconditionError(
        absl::StrCat("game is ", StatusName(status_)));
  }
  const std::vector<MoveKind> legal = LegalMoves();
  if (std::find(legal.begin(), legal.end(), move.kind) == legal.end()) {
    return absl::FailedPreconditionError(absl::StrCat(
        MoveKindName(move.kind), " is not legal here"));
  }
  const int n = config_.classifier.width();
  if (move.kind == MoveKind::kPRequest) {
    if (move.indices == 0 || (move.indices & ~FullMask(n)) != 0) {
      return absl::FailedPreconditionError(
          "P_REQUEST needs a non-empty index set within the feature space");
    }
    if (std::popcount(move.indices) > config_.radius) {
      return absl::FailedPreconditionError(absl::StrCat(
          "P_REQUEST index set is larger than the radius ", config_.radius));
    }
  }
  if (move.kind == MoveKind::kChallenge &&
      (move.literals.width() != n || move.literals.empty())) {
    return absl::FailedPreconditionError(
        "CHALLENGE needs a non-empty literal set over the feature space");
  }
  return absl::OkStatus();
}

int Game::UncoveredDischarged(const Transformation& t,
                              const std::vector<bool>& covered) const {
  const LabelId label = config_.classifier.Predict(t.Apply(config_.focal));
  int count = 0;
  for (size_t j = 0; j < constraints_.size(); ++j) {
    if (!covered[j] &&
        Discharges(constraints_[j], config_.conundrum, config_.factors,
                   config_.focal, config_.target, t, label)) {
      ++count;
    }
  }
  return count;
}

void Game::Record(const Transformation& t, LabelId label) {
  for (const Proposal& p : proposals_) {
    if (p.delta == t) return;
  }
  proposals_.push_back({t, label, false});
}

Reply Game::ReplyToNRequest() {
  const std::vector<bool> covered = Observed();
  std::optional<size_t> best;
  int best_score = 0;
  for (size_t k = 0; k < candidates_.size(); ++k) {
    const Transformation& t = candidates_[k];
    const bool seen = std::any_of(proposals_.begin(), proposals_.end(),
                                  [&t](const Proposal& p) { return p.delta == t; });
    if (seen) continue;
    const int score = UncoveredDischarged(t, covered);
    const bool better = config_.policy == AdversaryPolicy::kAdversarial
                            ? score < best_score
                            : score > best_score;
    if (!best || better) {
      best = k;
      best_score = score;
    }
  }
  if (!best) return Reply{ReplyKind::kExhausted, std::nullopt, -1, std::nullopt};
  const Transformation& t = candidates_[*best];
  ++counters_.adversary_oracle_calls;
  const LabelId label = config_.classifier.Predict(t.Apply(config_.focal));
  Record(t, label);
  return Reply{ReplyKind::kPropose, t, label, std::nullopt};
}

Reply Game::ReplyToPRequest(uint64_t indices) {
  const Transformation t = Transformation::Flip(config_.focal, indices);
  ++counters_.adversary_oracle_calls;
  const LabelId label = config_.classifier.Predict(t.Apply(config_.focal));
  Record(t, label);
  return Reply{ReplyKind::kPropose, t, label, std::nullopt};
}

absl::StatusOr<Reply> Game::ReplyToChallenge(const LiteralSet& literals) {
  const Classifier& c = config_.classifier;
  const int64_t before = oracle_.calls();
  absl::StatusOr<bool> entails = oracle_.Entails(c, literals, config_.target);
  if (!entails.ok()) return entails.status();
  if (*entails) {
    const World image = literals.Complete(config_.focal);
    const Transformation t = Transformation::Flip(
        config_.focal, image.bits() ^ config_.focal.bits());
    if (t.size() <= config_.radius) Record(t, config_.target);
    counters_.adversary_oracle_calls += oracle_.calls() - before;
    return Reply{ReplyKind::kConfirm, t, config_.target, literals};
  }
  const std::vector<bool> covered = Observed();
  std::optional<size_t> best;
  bool best_matches = false;
  int best_score = -1;
  for (size_t k = 0; k < candidates_.size(); ++k) {
    const bool matches = literals.SatisfiedBy(candidates_[k].Apply(config_.focal));
    const int score = UncoveredDischarged(candidates_[k], covered);
    if (!best || (matches && !best_matches) ||
        (matches == best_matches && score > best_score)) {
      best = k;
      best_matches = matches;
      best_score = score;
    }
  }
  if (!best) {
    return absl::InternalError("no appropriate transformation to correct with");
  }
  const Transformation& t = candidates_[*best];
  const World image = t.Apply(config_.focal);
  // Keep the challenged literals the image agrees with.
  const LiteralSet agreed(c.width(), literals.mask() & ~(literals.values() ^ image.bits()),
                          literals.values());
  absl::StatusOr<LiteralSet> completion = MinimizeLiterals(
      oracle_, c, LiteralSet::Of(image), config_.target, agreed);
  if (!completion.ok()) return completion.status();
  counters_.adversary_oracle_calls += oracle_.calls() - before;
  Record(t, config_.target);
  return Reply{ReplyKind::kCorrect, t, config_.target, *completion};
}

Reply Game::ReplyToAccept() {
  for (Proposal& p : proposals_) p.accepted = true;
  if (WinningCheck()) status_ = GameStatus::kWon;
  return Reply{ReplyKind::kAck, std::nullopt, -1, std::nullopt};
}

absl::StatusOr<Reply> Game::Play(const Move& move) {
  if (absl::Status s = CheckLegal(move); !s.ok()) return s;
  Reply reply;
  switch (move.kind) {
    case MoveKind::kAccept:
      reply = ReplyToAccept();
      break;
    case MoveKind::kNRequest:
      reply = ReplyToNRequest();
      break;
    case MoveKind::kPRequest:
      reply = ReplyToPRequest(move.indices);
      break;
    case MoveKind::kChallenge: {
      absl::StatusOr<Reply> r = ReplyToChallenge(move.literals);
      if (!r.ok()) return r.status();
      reply = *std::move(r);
      break;
    }
  }
  ++counters_.explainee_moves;
  transcript_.push_back({move, reply, counters_});
  return reply;
}

void Game::Abandon() {
  if (status_ == GameStatus::kOpen) status_ = GameStatus::kAbandoned;
}

std::string ExplaineePolicyName(ExplaineePolicy p) {
  switch (p) {
    case ExplaineePolicy::kExhaustive:
      return "exhaustive";
    case ExplaineePolicy::kDirectedLocalSearch:
      return "directed_local_search";
    case ExplaineePolicy::kConundrumChallenger:
      return "conundrum_challenger";
  }
  return "";
}

absl::StatusOr<ExplaineePolicy> ParseExplaineePolicy(std::string_view name) {
  for (ExplaineePolicy p :
       {ExplaineePolicy::kExhaustive, ExplaineePolicy::kDirectedLocalSearch,
        ExplaineePolicy::kConundrumChallenger}) {
    if (ExplaineePolicyName(p) == name) return p;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown explainee policy '", std::string(name), "'"));
}

namespace {

// The explainee's policies below read only public state: the config minus
// the classifier, and the labels revealed with each proposal.

absl::Status RunExhaustive(Game& game, int max_moves) {
  while (game.status() == GameStatus::kOpen) {
    if (game.counters().explainee_moves >= max_moves) break;
    if (All(game.Observed())) {
      absl::StatusOr<Reply> r = game.Play(Move::Accept());
      if (!r.ok()) return r.status();
      continue;
    }
    absl::StatusOr<Reply> r = game.Play(Move::NRequest());
    if (!r.ok()) return r.status();
    if (r->kind == ReplyKind::kExhausted) break;
  }
  return absl::OkStatus();
}

// How far the index set `s` is from discharging each unresolved constraint,
// with one extra unit when the image is known or assumed to miss the target.
class LocalCost {
 public:
  explicit LocalCost(const GameConfig& config)
      : config_(config),
        constraints_(ConstraintsFor(config.conundrum, config.factors)) {}

  int operator()(uint64_t s, bool on_target,
                 const std::vector<bool>& covered) const {
    const int n = config_.focal.width();
    const World image = config_.focal.Xor(s);
    int total = 0;
    for (size_t j = 0; j < constraints_.size(); ++j) {
      if (covered[j]) continue;
      const Constraint& k = constraints_[j];
      int cost = on_target ? 0 : 1;
      if (k.is_factor) {
        const LiteralSet& want = config_.factors[k.factor].map().targets();
        cost += std::popcount((image.bits() ^ want.values()) & want.mask());
      } else if (config_.conundrum.kind() == ConundrumKind::kCI) {
        cost += std::popcount(s & config_.conundrum.attended());
      } else {
        cost += std::popcount(s & ~config_.conundrum.mistaken() & FullMask(n));
      }
      total += cost;
    }
    return total;
  }

 private:
  const GameConfig& config_;
  std::vector<Constraint> constraints_;
};

absl::Status RunDirectedLocalSearch(Game& game, int max_moves,
                                    std::vector<int>& trace) {
  const GameConfig& config = game.config();
  const int n = config.focal.width();
  const LocalCost cost(config);
  Rng rng(config.seed);
  std::map<uint64_t, LabelId> known;
  auto on_target = [&](uint64_t s) {
    auto it = known.find(s);
    return it == known.end() || it->second == config.target;
  };
  uint64_t current = 0;
  known[0] = -1;  // The focal point never carries the target.
  int current_cost = cost(current, false, game.Observed());
  trace.push_back(current_cost);
  while (game.status() == GameStatus::kOpen) {
    if (All(game.Observed())) {
      trace.push_back(0);
      absl::StatusOr<Reply> r = game.Play(Move::Accept());
      if (!r.ok()) return r.status();
      break;
    }
    std::vector<uint64_t> neighbors;
    for (int f = 0; f < n; ++f) {
      const uint64_t s = current ^ FeatureBit(n, f);
      if (s != 0 && std::popcount(s) <= config.radius) neighbors.push_back(s);
    }
    rng.Shuffle(neighbors);
    std::vector<bool> covered = game.Observed();
    std::stable_sort(neighbors.begin(), neighbors.end(),
                     [&](uint64_t a, uint64_t b) {
                       return cost(a, on_target(a), covered) <
                              cost(b, on_target(b), covered);
                     });
    bool moved = false;
    for (uint64_t s : neighbors) {
      if (cost(s, on_target(s), covered) >= current_cost) break;
      if (!known.count(s)) {
        if (game.counters().explainee_moves >= max_moves) return absl::OkStatus();
        absl::StatusOr<Reply> r = game.Play(Move::PRequest(s));
        if (!r.ok()) return r.status();
        known[s] = r->label;
        covered = game.Observed();
        current_cost = cost(current, on_target(current), covered);
        if (All(covered)) break;
      }
      const int c = cost(s, on_target(s), covered);
      if (c < current_cost) {
        current = s;
        current_cost = c;
        trace.push_back(c);
        moved = true;
        break;
      }
    }
    if (All(game.Observed())) continue;
    if (!moved) break;
  }
  return absl::OkStatus();
}

absl::Status RunChallenger(Game& game, int max_moves) {
  const GameConfig& config = game.config();
  const int n = config.focal.width();
  const std::vector<Constraint>& constraints = game.constraints();
  std::vector<bool> challenged(constraints.size(), false);
  while (game.status() == GameStatus::kOpen) {
    if (game.counters().explainee_moves >= max_moves) break;
    const std::vector<bool> covered = game.Observed();
    std::optional<size_t> next;
    for (size_t j = 0; j < constraints.size() && !next; ++j) {
      if (!covered[j] && !challenged[j]) next = j;
    }
    if (!next) {
      absl::StatusOr<Reply> r = game.Play(Move::Accept());
      if (!r.ok()) return r.status();
      break;
    }
    challenged[*next] = true;
    const Constraint& k = constraints[*next];
    LiteralSet claim;
    if (k.is_factor) {
      claim = config.factors[k.factor].map().targets();
    } else {
      const uint64_t fixed = config.conundrum.kind() == ConundrumKind::kCI
                                 ? config.conundrum.attended()
                                 : FullMask(n) & ~config.conundrum.mistaken();
      claim = LiteralSet(n, fixed, config.focal.bits());
    }
    // Nothing to hold fixed: any appropriate proposal resolves it.
    const Move move =
        claim.empty() ? Move::NRequest() : Move::Challenge(claim);
    absl::StatusOr<Reply> r = game.Play(move);
    if (!r.ok()) return r.status();
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SimulationResult> Simulate(const GameConfig& config,
                                          ExplaineePolicy policy,
                                          int max_moves) {
  if (policy == ExplaineePolicy::kDirectedLocalSearch &&
      config.variant != Variant::kForcing) {
    return absl::InvalidArgumentError(
        "directed_local_search needs the forcing variant");
  }
  if (policy == ExplaineePolicy::kConundrumChallenger &&
      config.variant != Variant::kChallenge) {
    return absl::InvalidArgumentError(
        "conundrum_challenger needs the challenge variant");
  }
  if (max_moves < 1) return absl::InvalidArgumentError("max_moves must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<Game> game = Game::Create(config);
  if (!game.ok()) return game.status();
  SimulationResult result;
  absl::Status s;
  switch (policy) {
    case ExplaineePolicy::kExhaustive:
      s = RunExhaustive(*game, max_moves);
      break;
    case ExplaineePolicy::kDirectedLocalSearch:
      s = RunDirectedLocalSearch(*game, max_moves, result.cost_trace);
      break;
    case ExplaineePolicy::kConundrumChallenger:
      s = RunChallenger(*game, max_moves);
      break;
  }
  if (!s.ok()) return s;
  game->Abandon();
  result.status = game->status();
  result.transcript = game->transcript();
  result.counters = game->counters();
  result.hidden_size = static_cast<int>(game->hidden().deltas.size());
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

int FlipCost(const std::vector<World>& targets, int m, const World& w) {
  for (size_t j = 0; j < targets.size(); ++j) {
    if (targets[j] == w) return m - static_cast<int>(j + 1);
  }
  return m;
}

absl::StatusOr<FlipSearchResult> FlipLocalSearch(const Classifier& c,
                                                 const World& focal,
                                                 LabelId target, int m,
                                                 uint64_t seed) {
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  const int n = c.width();
  absl::StatusOr<std::vector<World>> boundary = Boundary(c, focal, target, n);
  if (!boundary.ok()) return boundary.status();
  FlipSearchResult result;
  for (const World& w : *boundary) {
    if (static_cast<int>(result.targets.size()) < m) result.targets.push_back(w);
  }
  absl::StatusOr<std::vector<Transformation>> rest =
      AppropriateTransformations(c, focal, target, n);
  if (!rest.ok()) return rest.status();
  for (const Transformation& t : *rest) {
    if (static_cast<int>(result.targets.size()) >= m) break;
    const World w = t.Apply(focal);
    if (std::find(result.targets.begin(), result.targets.end(), w) ==
        result.targets.end()) {
      result.targets.push_back(w);
    }
  }
  Rng rng(seed);
  std::vector<int> features(n);
  for (int f = 0; f < n; ++f) features[f] = f;
  const size_t wanted = result.targets.size();
  const int max_descents = 8 * m * n;
  std::set<World> found;
  for (int d = 0; d < max_descents; ++d) {
    Descent descent;
    World at = focal;
    int cost = FlipCost(result.targets, m, at);
    descent.trace.push_back(cost);
    while (true) {
      rng.Shuffle(features);
      bool moved = false;
      for (int f : features) {
        const World next = at.Flipped(f);
        const int next_cost = FlipCost(result.targets, m, next);
        if (next_cost < cost) {
          at = next;
          cost = next_cost;
          descent.trace.push_back(cost);
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    descent.end = at;
    if (cost < m && found.insert(at).second) result.solutions.push_back(at);
    result.descents.push_back(std::move(descent));
    if (found.size() >= wanted) break;
  }
  return result;
}

std::vector<Scenario> BuiltinScenarios() {
  std::vector<Scenario> out;
  const Classifier bank = BankLoan4();
  const World focal(4, 0);
  const ConundrumSpec ci = *ConundrumSpec::Incompleteness(4, FeatureBit(4, 0));
  const ConundrumSpec cm = *ConundrumSpec::Mistake(
      4, FeatureBit(4, 0), LiteralSet(4, FeatureBit(4, 0), 0));
  const std::vector<PrejudicialFactor> factors = {PrivilegeFactor(bank)};
  auto bank_config = [&](Variant v, const ConundrumSpec& spec) {
    return GameConfig{bank, focal, 1, 4, v, spec, factors,
                      AdversaryPolicy::kAdversarial, 0};
  };
  const std::string loan =
      "Loan applicant 0000 was denied and asks why; attends only to income "
      "and suspects privilege matters.";
  out.push_back({"bankloan4", loan, bank_config(Variant::kChallenge, ci)});
  out.push_back({"bankloan4-restriction", loan,
                 bank_config(Variant::kRestriction, ci)});
  out.push_back({"bankloan4-forcing", loan, bank_config(Variant::kForcing, ci)});
  out.push_back({"bankloan4-mistake",
                 "Loan applicant 0000 believed their income sufficed; wants the "
                 "values that would have.",
                 bank_config(Variant::kChallenge, cm)});
  for (int k : {2, 4}) {
    const ScalingInstance s = ScalingFamily(k);
    out.push_back({absl::StrCat("scaling-k", k),
                   absl::StrCat("Loan family with ", k,
                                " irrelevant noise features, restriction rules."),
                   MakeConfig(s.classifier, s.instance, Variant::kRestriction,
                              AdversaryPolicy::kAdversarial)});
  }
  return out;
}

}  // namespace xfair
