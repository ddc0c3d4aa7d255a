// Copyright 2026 The ABR Evaluation Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <map>
#include <random>
#include <string>

#include "abr/beliefs.h"
#include "abr/game_tree.h"
#include "abr/policy.h"
#include "gtest/gtest.h"
#include "oracles/oracles.h"

namespace abr {
namespace {

std::map<std::string, double> AsMap(const BeliefDistribution& b) {
  std::map<std::string, double> out;
  for (size_t k = 0; k < b.support.size(); ++k) {
    out[oracle::HistoryString(*b.support[k])] += b.weights[k];
  }
  return out;
}

// Leduc player 0 raises with a King and calls otherwise.
class RaiseWithKing final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::kFixedRule; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const override {
    const bool king = key.observation.compare(3, 1, "K") == 0;
    std::vector<double> p(legal.size(), 0.0);
    for (size_t i = 0; i < legal.size(); ++i) {
      if (legal[i] == (king ? 2 : 1)) p[i] = 1;
    }
    return p;
  }
  std::string Describe() const override { return "raise_with_king"; }
};

// Posterior computed with the searcher's own reach included, which must
// cancel under perfect recall.
std::map<std::string, double> JointPosterior(const Game& game,
                                             const InfoStateKey& key,
                                             const Policy& own,
                                             const Policy& opponent) {
  std::map<std::string, double> out;
  double total = 0;
  std::function<void(const State&, double)> walk = [&](const State& s,
                                                       double reach) {
    if (s.IsTerminal() || reach == 0) return;
    if (s.CurrentPlayer() == key.player && s.Key(key.player) == key) {
      out[oracle::HistoryString(s)] += reach;
      total += reach;
      return;
    }
    if (s.IsChanceNode()) {
      for (const auto& [a, p] : s.ChanceOutcomes()) walk(*s.Child(a), reach * p);
      return;
    }
    const Player p = s.CurrentPlayer();
    const auto legal = s.LegalActions();
    const auto probs = (p == key.player ? own : opponent)
                           .ActionProbabilities(s.Key(p), legal);
    for (size_t i = 0; i < legal.size(); ++i) {
      walk(*s.Child(legal[i]), reach * probs[i]);
    }
  };
  walk(*game.NewInitialState(), 1.0);
  for (auto& [h, w] : out) w /= total;
  return out;
}

void CheckOracleEquivalence(GameId id) {
  auto tree = CachedGameTree(id);
  const Game& game = tree->game();
  for (int trial = 0; trial < 10; ++trial) {
    auto opponent = RandomTabularPolicy(id, -1, 100 + trial);
    for (Player p : {0, 1}) {
      const auto all = oracle::AllPosteriors(game, p, *opponent);
      ASSERT_EQ(all.size(), tree->infostates(p).size());
      for (const InfoStateInfo& info : tree->infostates(p)) {
        const BeliefDistribution b = Posterior(game, info.key, *opponent);
        EXPECT_FALSE(b.degenerate);
        double total = 0;
        for (size_t k = 0; k < b.support.size(); ++k) {
          EXPECT_EQ(b.support[k]->Key(p), info.key);
          EXPECT_GE(b.weights[k], 0);
          total += b.weights[k];
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        const auto mine = AsMap(b);
        const auto& reference = all.at(info.key.observation);
        ASSERT_EQ(mine.size(), reference.size()) << info.key.observation;
        for (const auto& [h, w] : reference) {
          ASSERT_TRUE(mine.count(h)) << h;
          EXPECT_NEAR(mine.at(h), w, 1e-12) << info.key.observation << " " << h;
        }
      }
    }
  }
}

TEST(BeliefsTest, OracleEquivalenceKuhn) { CheckOracleEquivalence(GameId::kKuhnPoker); }
TEST(BeliefsTest, OracleEquivalenceLeduc) { CheckOracleEquivalence(GameId::kLeducPoker); }

TEST(BeliefsTest, OwnPolicyIndependence) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  auto opponent = RandomTabularPolicy(GameId::kLeducPoker, -1, 7);
  auto own_a = RandomTabularPolicy(GameId::kLeducPoker, -1, 8);
  auto own_b = RandomTabularPolicy(GameId::kLeducPoker, -1, 9);
  int checked = 0;
  for (const InfoStateInfo& info : tree->infostates(1)) {
    if (++checked % 7 != 0) continue;
    const auto a = JointPosterior(tree->game(), info.key, *own_a, *opponent);
    const auto b = JointPosterior(tree->game(), info.key, *own_b, *opponent);
    const auto mine = AsMap(Posterior(tree->game(), info.key, *opponent));
    ASSERT_EQ(a.size(), mine.size());
    for (const auto& [h, w] : a) {
      EXPECT_NEAR(w, b.at(h), 1e-12);
      EXPECT_NEAR(w, mine.at(h), 1e-12);
    }
  }
}

TEST(BeliefsTest, ChanceOnlyBeforeOpponentActs) {
  auto game = LoadGame(GameId::kLeducPoker);
  auto opponent = RandomTabularPolicy(GameId::kLeducPoker, -1, 1);
  const BeliefDistribution b = Posterior(*game, {0, "p0 Js"}, *opponent);
  ASSERT_EQ(b.support.size(), 5u);
  for (double w : b.weights) EXPECT_NEAR(w, 0.2, 1e-15);
}

TEST(BeliefsTest, PerfectInformationHasOneHistory) {
  auto game = LoadGame(GameId::kTicTacToe);
  UniformPolicy u;
  const BeliefDistribution b = Posterior(*game, {1, "p1 4 0 8"}, u);
  ASSERT_EQ(b.support.size(), 1u);
  EXPECT_EQ(b.weights[0], 1.0);
}

TEST(BeliefsTest, KingRaiserPosterior) {
  auto game = LoadGame(GameId::kLeducPoker);
  RaiseWithKing opponent;
  const BeliefDistribution b = Posterior(*game, {1, "p1 Js r"}, opponent);
  ASSERT_EQ(b.support.size(), 5u);
  double king_mass = 0;
  for (size_t k = 0; k < b.support.size(); ++k) {
    const auto& s = static_cast<const State&>(*b.support[k]);
    const std::string h = oracle::HistoryString(s);
    const bool king = s.History()[0].action >= 4;
    if (king) {
      EXPECT_NEAR(b.weights[k], 0.5, 1e-15) << h;
      king_mass += b.weights[k];
    } else {
      EXPECT_EQ(b.weights[k], 0.0) << h;
    }
  }
  EXPECT_NEAR(king_mass, 1.0, 1e-15);
  EXPECT_FALSE(b.degenerate);
}

TEST(BeliefsTest, DegenerateFallsBackToChanceReach) {
  auto game = LoadGame(GameId::kLeducPoker);
  auto caller = MakeChump(ChumpRule::kAlwaysCall, GameId::kLeducPoker);
  const BeliefDistribution b = Posterior(*game, {1, "p1 Js r"}, *caller);
  EXPECT_TRUE(b.degenerate);
  ASSERT_EQ(b.support.size(), 5u);
  for (double w : b.weights) EXPECT_NEAR(w, 0.2, 1e-15);
  BeliefCache cache(game, caller);
  cache.Get({1, "p1 Js r"});
  cache.Get({1, "p1 Js r"});
  cache.Get({1, "p1 Js c"});
  EXPECT_EQ(cache.degenerate_count(), 1);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(BeliefsTest, EmptySupportIsContractViolation) {
  auto game = LoadGame(GameId::kLeducPoker);
  UniformPolicy u;
  EXPECT_THROW(Posterior(*game, {1, "p1 Js f"}, u), ContractViolation);
  EXPECT_THROW(Posterior(*game, {0, "p0 Xx"}, u), ContractViolation);
}

TEST(BeliefsTest, SamplingMatchesWeights) {
  auto game = LoadGame(GameId::kLeducPoker);
  auto opponent = RandomTabularPolicy(GameId::kLeducPoker, -1, 3);
  const BeliefDistribution b = Posterior(*game, {0, "p0 Qh r r c bKs r r"}, *opponent);
  ASSERT_GT(b.support.size(), 1u);
  std::map<std::string, int> index;
  for (size_t k = 0; k < b.support.size(); ++k) {
    index[oracle::HistoryString(*b.support[k])] = static_cast<int>(k);
  }
  constexpr int kDraws = 1'000'000;
  std::vector<int> counts(b.support.size(), 0);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < kDraws; ++i) {
    ++counts[index.at(oracle::HistoryString(*SampleHistory(b, rng)))];
  }
  for (size_t k = 0; k < counts.size(); ++k) {
    const double p = b.weights[k];
    const double sigma = std::sqrt(kDraws * p * (1 - p));
    EXPECT_LE(std::abs(counts[k] - kDraws * p), 3 * sigma + 1e-9) << k;
  }
}

TEST(BeliefsTest, SamplingIsReproducible) {
  auto game = LoadGame(GameId::kLeducPoker);
  UniformPolicy u;
  const BeliefDistribution b = Posterior(*game, {1, "p1 Js r"}, u);
  std::mt19937_64 r1(9), r2(9);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleHistory(b, r1)->ToString(), SampleHistory(b, r2)->ToString());
  }
  const BeliefDistribution single = Posterior(*LoadGame(GameId::kTicTacToe),
                                              {0, "p0 4 0"}, u);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(SampleHistory(single, r1)->ToString(), single.support[0]->ToString());
  }
}

}  // namespace
}  // namespace abr
