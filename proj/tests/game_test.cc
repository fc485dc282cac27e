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

#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "xfair/families.h"
#include "xfair/rng.h"

namespace xfair {
namespace {

constexpr LabelId kGrant = 1;

GameConfig BankConfig(Variant variant, bool mistake = false) {
  for (const Scenario& s : BuiltinScenarios()) {
    if (s.name == (mistake ? "bankloan4-mistake" : "bankloan4")) {
      GameConfig c = s.config;
      c.variant = variant;
      return c;
    }
  }
  ADD_FAILURE() << "missing scenario";
  return {};
}

Transformation Set(std::vector<std::pair<int, bool>> targets) {
  return *Transformation::Create(4, targets);
}

// Checks the state invariants that must hold after every play.
void ExpectConsistent(const Game& g) {
  const std::vector<MoveKind> legal = g.LegalMoves();
  if (g.status() != GameStatus::kOpen) {
    EXPECT_TRUE(legal.empty());
    return;
  }
  const std::set<MoveKind> kinds(legal.begin(), legal.end());
  EXPECT_EQ(kinds.count(MoveKind::kAccept) > 0, !g.proposals().empty());
  EXPECT_EQ(kinds.count(MoveKind::kPRequest) > 0,
            g.config().variant == Variant::kForcing);
  EXPECT_EQ(kinds.count(MoveKind::kChallenge) > 0,
            g.config().variant == Variant::kChallenge);
  EXPECT_EQ(static_cast<int64_t>(g.transcript().size()),
            g.counters().explainee_moves);
}

TEST(GameTest, OpeningMoves) {
  auto challenge = Game::Create(BankConfig(Variant::kChallenge));
  ASSERT_TRUE(challenge.ok());
  EXPECT_EQ(challenge->LegalMoves(),
            (std::vector<MoveKind>{MoveKind::kNRequest, MoveKind::kChallenge}));
  auto restriction = Game::Create(BankConfig(Variant::kRestriction));
  ASSERT_TRUE(restriction.ok());
  EXPECT_EQ(restriction->LegalMoves(),
            std::vector<MoveKind>{MoveKind::kNRequest});
  EXPECT_FALSE(restriction->Play(Move::Accept()).ok());
  EXPECT_FALSE(restriction->Play(Move::PRequest(0b0100)).ok());
  EXPECT_FALSE(restriction->WinningCheck());
  EXPECT_EQ(restriction->hidden().deltas,
            std::vector<Transformation>{Set({{1, true}})});
}

TEST(GameTest, ZeroRadiusRefused) {
  GameConfig config = BankConfig(Variant::kChallenge);
  config.radius = 0;
  EXPECT_EQ(Game::Create(config).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(GameTest, ChallengeIsCorrected) {
  auto g = Game::Create(BankConfig(Variant::kChallenge));
  ASSERT_TRUE(g.ok());
  auto reply = g->Play(Move::Challenge(LiteralSet(4, 0b1000, 0)));
  ASSERT_TRUE(reply.ok());
  EXPECT_EQ(reply->kind, ReplyKind::kCorrect);
  EXPECT_EQ(reply->delta, Set({{1, true}}));
  EXPECT_EQ(reply->label, kGrant);
  ASSERT_TRUE(reply->literals.has_value());
  EXPECT_EQ(*reply->literals,
            *LiteralSet::Create(4, {{0, false}, {1, true}, {2, false}}));
  ExpectConsistent(*g);
  auto ack = g->Play(Move::Accept());
  ASSERT_TRUE(ack.ok());
  EXPECT_EQ(ack->kind, ReplyKind::kAck);
  EXPECT_EQ(g->status(), GameStatus::kWon);
  EXPECT_TRUE(g->WinningCheck());
  EXPECT_FALSE(g->Play(Move::NRequest()).ok());
  ExpectConsistent(*g);
}

TEST(GameTest, TrueChallengeIsConfirmed) {
  auto g = Game::Create(BankConfig(Variant::kChallenge));
  ASSERT_TRUE(g.ok());
  auto reply = g->Play(Move::Challenge(*LiteralSet::Create(4, {{1, true}, {2, false}})));
  ASSERT_TRUE(reply.ok());
  EXPECT_EQ(reply->kind, ReplyKind::kConfirm);
  EXPECT_EQ(reply->delta, Set({{1, true}}));
}

TEST(GameTest, ForcedProposal) {
  auto g = Game::Create(BankConfig(Variant::kForcing));
  ASSERT_TRUE(g.ok());
  auto reply = g->Play(Move::PRequest(0b0100));
  ASSERT_TRUE(reply.ok());
  EXPECT_EQ(reply->kind, ReplyKind::kPropose);
  EXPECT_EQ(reply->delta, Set({{1, true}}));
  EXPECT_EQ(reply->label, kGrant);
  EXPECT_EQ(g->LegalMoves(),
            (std::vector<MoveKind>{MoveKind::kAccept, MoveKind::kNRequest,
                                   MoveKind::kPRequest}));
  EXPECT_FALSE(g->Play(Move::PRequest(0)).ok());
  EXPECT_FALSE(g->Play(Move::PRequest(0b10000)).ok());
}

TEST(GameTest, AdversarialDeferral) {
  auto g = Game::Create(BankConfig(Variant::kRestriction));
  ASSERT_TRUE(g.ok());
  std::vector<Transformation> got;
  for (int i = 0; i < 3; ++i) {
    auto reply = g->Play(Move::NRequest());
    ASSERT_TRUE(reply.ok());
    ASSERT_EQ(reply->kind, ReplyKind::kPropose);
    got.push_back(*reply->delta);
    ExpectConsistent(*g);
  }
  EXPECT_EQ(got[0], Set({{0, true}}));
  EXPECT_EQ(got[1], Set({{0, true}, {3, true}}));
  EXPECT_EQ(got[2], Set({{0, true}, {1, true}}));
  // Accepting evidence that leaves CI open does not close the game.
  ASSERT_TRUE(g->Play(Move::Accept()).ok());
  EXPECT_EQ(g->status(), GameStatus::kOpen);
  EXPECT_EQ(g->Resolved(), (std::vector<bool>{false, true}));
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(g->Play(Move::NRequest()).ok());
  auto exhausted = g->Play(Move::NRequest());
  ASSERT_TRUE(exhausted.ok());
  EXPECT_EQ(exhausted->kind, ReplyKind::kExhausted);
  std::set<uint64_t> masks;
  for (const Proposal& p : g->proposals()) masks.insert(p.delta.mask());
  EXPECT_EQ(masks.size(), 6u);
}

TEST(GameTest, CooperativeOffersBestFirst) {
  GameConfig config = BankConfig(Variant::kRestriction);
  config.policy = AdversaryPolicy::kCooperative;
  auto g = Game::Create(config);
  ASSERT_TRUE(g.ok());
  auto reply = g->Play(Move::NRequest());
  ASSERT_TRUE(reply.ok());
  EXPECT_EQ(reply->delta, Set({{1, true}}));
}

TEST(GameTest, WinRequiresBias) {
  GameConfig config = BankConfig(Variant::kForcing, true);
  auto g = Game::Create(config);
  ASSERT_TRUE(g.ok());
  ASSERT_TRUE(g->Play(Move::PRequest(0b1000)).ok());
  ASSERT_TRUE(g->Play(Move::Accept()).ok());
  EXPECT_FALSE(g->WinningCheck());
  EXPECT_EQ(g->status(), GameStatus::kOpen);
  ASSERT_TRUE(g->Play(Move::PRequest(0b0100)).ok());
  ASSERT_TRUE(g->Play(Move::Accept()).ok());
  EXPECT_EQ(g->status(), GameStatus::kWon);
}

TEST(GameTest, Deterministic) {
  const std::vector<Move> moves = {Move::NRequest(),
                                   Move::Challenge(LiteralSet(4, 0b1000, 0)),
                                   Move::NRequest(), Move::Accept()};
  std::vector<std::vector<Reply>> runs;
  for (int r = 0; r < 2; ++r) {
    auto g = Game::Create(BankConfig(Variant::kChallenge));
    ASSERT_TRUE(g.ok());
    runs.emplace_back();
    for (const Move& m : moves) {
      auto reply = g->Play(m);
      ASSERT_TRUE(reply.ok());
      runs.back().push_back(*reply);
    }
  }
  EXPECT_EQ(runs[0], runs[1]);
}

TEST(SimulateTest, ChallengerOnBankLoan) {
  auto r = Simulate(BankConfig(Variant::kChallenge),
                    ExplaineePolicy::kConundrumChallenger, 100);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->status, GameStatus::kWon);
  EXPECT_LE(r->counters.explainee_moves, 2 * r->hidden_size + 1);
  EXPECT_FALSE(Simulate(BankConfig(Variant::kRestriction),
                        ExplaineePolicy::kConundrumChallenger, 100)
                   .ok());
  EXPECT_FALSE(Simulate(BankConfig(Variant::kChallenge),
                        ExplaineePolicy::kDirectedLocalSearch, 100)
                   .ok());
}

TEST(SimulateTest, MaxMovesAbandons) {
  const ScalingInstance s = ScalingFamily(3);
  auto r = Simulate(MakeConfig(s.classifier, s.instance, Variant::kRestriction,
                               AdversaryPolicy::kAdversarial),
                    ExplaineePolicy::kExhaustive, 5);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->status, GameStatus::kAbandoned);
  EXPECT_EQ(r->counters.explainee_moves, 5);
}

TEST(SimulateTest, RestrictionBlowUp) {
  int64_t previous = 0;
  for (int k = 2; k <= 6; ++k) {
    const ScalingInstance s = ScalingFamily(k);
    auto r = Simulate(MakeConfig(s.classifier, s.instance, Variant::kRestriction,
                                 AdversaryPolicy::kAdversarial),
                      ExplaineePolicy::kExhaustive, 1 << 20);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r->status, GameStatus::kWon);
    EXPECT_EQ(r->counters.explainee_moves, (int64_t{1} << (k + 1)) + 2);
    EXPECT_GT(r->counters.explainee_moves, previous);
    previous = r->counters.explainee_moves;
  }
}

TEST(SimulateTest, DirectedLocalSearchTrace) {
  Rng rng(301);
  int won = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(5));
    const Classifier c = RandomTruthTable(n, rng);
    FairnessInstance in;
    if (!RandomFairnessInstance(c, rng, 0, 2, in)) continue;
    if (!ComputeFairAdequateSet(c, in.focal, in.target, in.radius, in.spec,
                                in.factors)
             .ok()) {
      continue;
    }
    auto r = Simulate(MakeConfig(c, in, Variant::kForcing,
                                 AdversaryPolicy::kAdversarial, t),
                      ExplaineePolicy::kDirectedLocalSearch, 10000);
    ASSERT_TRUE(r.ok());
    ASSERT_FALSE(r->cost_trace.empty());
    for (size_t i = 1; i < r->cost_trace.size(); ++i) {
      EXPECT_LE(r->cost_trace[i], r->cost_trace[i - 1]);
    }
    EXPECT_NE(r->status, GameStatus::kOpen);
    if (r->status == GameStatus::kWon) {
      ++won;
      EXPECT_EQ(r->cost_trace.back(), 0);
    }
    for (const TranscriptEntry& e : r->transcript) {
      if (e.move.kind != MoveKind::kPRequest) continue;
      EXPECT_EQ(e.reply.kind, ReplyKind::kPropose);
      EXPECT_EQ(e.reply.delta->mask(), e.move.indices);
      EXPECT_EQ(e.reply.label, c.Predict(e.reply.delta->Apply(in.focal)));
    }
  }
  EXPECT_GT(won, 0);
}

TEST(SimulateTest, RandomChallengeGames) {
  Rng rng(307);
  int played = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(5));
    const Classifier c = RandomTruthTable(n, rng);
    FairnessInstance in;
    if (!RandomFairnessInstance(c, rng, 0, 3, in)) continue;
    const GameConfig config =
        MakeConfig(c, in, Variant::kChallenge, AdversaryPolicy::kAdversarial, t);
    auto g = Game::Create(config);
    if (!g.ok()) continue;
    auto r = Simulate(config, ExplaineePolicy::kConundrumChallenger, 100);
    ASSERT_TRUE(r.ok());
    ++played;
    EXPECT_EQ(r->status, GameStatus::kWon);
    EXPECT_LE(r->counters.explainee_moves, 2 * r->hidden_size + 1);
    EntailmentOracle oracle;
    for (const TranscriptEntry& e : r->transcript) {
      if (e.reply.kind != ReplyKind::kCorrect) continue;
      EXPECT_TRUE(oracle::Entails(c, e.reply.literals->mask(),
                                  e.reply.literals->values(), in.target));
    }
  }
  EXPECT_GT(played, 20);
}

TEST(SimulateTest, NoRepeatedProposals) {
  Rng rng(311);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(4));
    const Classifier c = RandomTruthTable(n, rng);
    FairnessInstance in;
    if (!RandomFairnessInstance(c, rng, 0, 2, in)) continue;
    for (AdversaryPolicy p :
         {AdversaryPolicy::kAdversarial, AdversaryPolicy::kCooperative}) {
      auto r = Simulate(MakeConfig(c, in, Variant::kRestriction, p),
                        ExplaineePolicy::kExhaustive, 1000);
      if (!r.ok()) continue;
      std::set<uint64_t> seen;
      for (const TranscriptEntry& e : r->transcript) {
        if (e.reply.kind != ReplyKind::kPropose) continue;
        EXPECT_TRUE(seen.insert(e.reply.delta->mask()).second);
      }
      // Exhaustive play always finds the evidence when the game is feasible.
      EXPECT_EQ(r->status, GameStatus::kWon);
    }
  }
}

TEST(FlipLocalSearchTest, BankLoanBothTargets) {
  auto r = FlipLocalSearch(BankLoan4(), World(4, 0), kGrant, 2, 7);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->targets,
            (std::vector<World>{World(4, 0b0100), World(4, 0b1000)}));
  EXPECT_EQ(std::set<World>(r->solutions.begin(), r->solutions.end()),
            (std::set<World>{World(4, 0b0100), World(4, 0b1000)}));
  std::set<int> ends;
  for (const Descent& d : r->descents) ends.insert(d.trace.back());
  EXPECT_TRUE(ends.count(0) && ends.count(1));
}

TEST(FlipLocalSearchTest, SingleStep) {
  auto r = FlipLocalSearch(BankLoan4(), World(4, 0), kGrant, 1, 0);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->descents.size(), 1u);
  EXPECT_EQ(r->descents[0].trace, (std::vector<int>{1, 0}));
}

TEST(FlipLocalSearchTest, PlateauStopsAtStart) {
  auto c = Classifier::Create(GenericSpace(3), {"deny", "grant"},
                              TruthTable{std::vector<LabelId>(8, 0)});
  ASSERT_TRUE(c.ok());
  auto r = FlipLocalSearch(*c, World(3, 0), kGrant, 2, 0);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->solutions.empty());
  for (const Descent& d : r->descents) {
    EXPECT_EQ(d.end, World(3, 0));
    EXPECT_EQ(d.trace, std::vector<int>{2});
  }
}

TEST(FlipLocalSearchTest, EndpointsAreLocalMinima) {
  Rng rng(313);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(6));
    const Classifier c = RandomTruthTable(n, rng);
    const World focal(n, rng.Below(uint64_t{1} << n));
    const int m = 1 + static_cast<int>(rng.Below(4));
    auto r = FlipLocalSearch(c, focal, 1 - c.Predict(focal), m, t);
    ASSERT_TRUE(r.ok());
    for (const Descent& d : r->descents) {
      for (size_t i = 1; i < d.trace.size(); ++i) {
        EXPECT_LT(d.trace[i], d.trace[i - 1]);
      }
      const int end = FlipCost(r->targets, m, d.end);
      EXPECT_EQ(end, d.trace.back());
      for (int f = 0; f < n; ++f) {
        EXPECT_GE(FlipCost(r->targets, m, d.end.Flipped(f)), end);
      }
    }
  }
}

}  // namespace
}  // namespace xfair
