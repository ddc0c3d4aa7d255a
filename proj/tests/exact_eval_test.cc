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


#include <random>
#include <vector>

#include "abr/cfr.h"
#include "abr/exact_eval.h"
#include "abr/game_tree.h"
#include "abr/policy.h"
#include "gtest/gtest.h"
#include "oracles/oracles.h"

namespace abr {
namespace {

// Always plays the lowest legal action id.
class FirstLegalPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::kFixedRule; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey&, std::span<const Action> legal) const override {
    std::vector<double> p(legal.size(), 0.0);
    p[0] = 1;
    return p;
  }
  std::string Describe() const override { return "first_legal"; }
};

DenseStrategy RandomDense(const GameTree& tree, Player p, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp(1.0);
  DenseStrategy out;
  for (const InfoStateInfo& info : tree.infostates(p)) {
    std::vector<double> probs(info.legal.size());
    double total = 0;
    for (double& x : probs) total += (x = exp(rng));
    for (double& x : probs) x /= total;
    out.push_back(std::move(probs));
  }
  return out;
}

TEST(ExactEvalTest, UniformNashConvLeducAndLiarsDice) {
  UniformPolicy u;
  const auto leduc = NashConv(*CachedGameTree(GameId::kLeducPoker), u, u);
  EXPECT_NEAR(leduc.nashconv, 4.74, 0.01);
  EXPECT_NEAR(leduc.exploitability, 2.37, 0.01);
  EXPECT_DOUBLE_EQ(leduc.nashconv,
                   leduc.per_player_br_values[0] + leduc.per_player_br_values[1]);
  const auto dice = NashConv(*CachedGameTree(GameId::kLiarsDice), u, u);
  EXPECT_NEAR(dice.nashconv, 1.56, 0.01);
  EXPECT_FALSE(dice.game_value_estimate.has_value());
}

TEST(ExactEvalTest, KuhnMatchesOracles) {
  auto tree = CachedGameTree(GameId::kKuhnPoker);
  const Game& game = tree->game();
  UniformPolicy u;
  EXPECT_NEAR(ExpectedValue(*tree, u, u)[0], 0.125, 1e-12);
  const auto report = NashConv(*tree, u, u);
  EXPECT_NEAR(report.per_player_br_values[0],
              oracle::BestResponseValue(game, u, 0), 1e-12);
  EXPECT_NEAR(report.per_player_br_values[1],
              oracle::BestResponseValue(game, u, 1), 1e-12);
  EXPECT_NEAR(report.nashconv, 11.0 / 12, 1e-12);
  for (int i = 0; i < 100; ++i) {
    auto pi0 = RandomTabularPolicy(GameId::kKuhnPoker, 0, 2 * i + 1);
    auto pi1 = RandomTabularPolicy(GameId::kKuhnPoker, 1, 2 * i + 2);
    const auto v = ExpectedValue(*tree, *pi0, *pi1);
    EXPECT_NEAR(v[0], oracle::ExpectedValue(game, *pi0, *pi1), 1e-12);
    EXPECT_EQ(v[0], -v[1]);
    const auto br = BestResponse(*tree, *pi1, 0);
    EXPECT_NEAR(br.br_value, oracle::BestResponseValue(game, *pi1, 0), 1e-12);
  }
}

TEST(ExactEvalTest, TicTacToeTopLeftMostLine) {
  auto tree = CachedGameTree(GameId::kTicTacToe);
  FirstLegalPolicy first;
  // X takes 0, 2, 4, 6 and completes the 2-4-6 diagonal.
  const auto v = ExpectedValue(*tree, first, first);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[0], oracle::ExpectedValue(tree->game(), first, first));
}

TEST(ExactEvalTest, SelfPlaySeatSwapAveragesToZero) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  auto pi = RandomTabularPolicy(GameId::kLeducPoker, -1, 5);
  const auto v = ExpectedValue(*tree, *pi, *pi);
  EXPECT_EQ(v[0] + v[1], 0.0);
}

TEST(ExactEvalTest, BestResponseDominatesAndIsConsistent) {
  for (GameId id : {GameId::kKuhnPoker, GameId::kLeducPoker}) {
    auto tree = CachedGameTree(id);
    auto opponent = RandomTabularPolicy(id, -1, 17);
    for (Player r : {0, 1}) {
      const auto br = BestResponse(*tree, *opponent, r);
      for (const auto& [key, probs] : br.br_policy->table()) {
        int ones = 0;
        for (double p : probs) ones += p == 1.0;
        EXPECT_EQ(ones, 1) << key;
      }
      EXPECT_EQ(br.br_policy->table().size(), tree->infostates(r).size());
      const auto as_br = r == 0 ? ExpectedValue(*tree, *br.br_policy, *opponent)
                                : ExpectedValue(*tree, *opponent, *br.br_policy);
      EXPECT_NEAR(as_br[r], br.br_value, 1e-9);
      for (int i = 0; i < 100; ++i) {
        auto alt = RandomTabularPolicy(id, r, 1000 + i);
        const auto v = r == 0 ? ExpectedValue(*tree, *alt, *opponent)
                              : ExpectedValue(*tree, *opponent, *alt);
        EXPECT_GE(br.br_value, v[r] - 1e-12);
      }
    }
  }
}

TEST(ExactEvalTest, UnreachableInfoStatesTakeLowestAction) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  auto fold = MakeChump(ChumpRule::kAlwaysFold, GameId::kLeducPoker);
  const auto br = BestResponse(*tree, *fold, 1);
  // Player 0 never raises, so seat 1 never faces a raise.
  const auto* probs = br.br_policy->Find("p1 Ks r");
  ASSERT_NE(probs, nullptr);
  EXPECT_EQ((*probs)[0], 1.0);
}

void CheckNonNegative(GameId id, int pairs) {
  auto tree = CachedGameTree(id);
  std::mt19937_64 rng(42);
  for (int i = 0; i < pairs; ++i) {
    const DenseStrategy pi0 = RandomDense(*tree, 0, rng);
    const DenseStrategy pi1 = RandomDense(*tree, 1, rng);
    EXPECT_GE(NashConv(*tree, pi0, pi1).nashconv, -1e-9);
  }
}

TEST(ExactEvalTest, NonNegativeKuhn) { CheckNonNegative(GameId::kKuhnPoker, 1000); }
TEST(ExactEvalTest, NonNegativeLeduc) { CheckNonNegative(GameId::kLeducPoker, 1000); }
TEST(ExactEvalTest, NonNegativeLiarsDice) {
  CheckNonNegative(GameId::kLiarsDice, 1000);
}

TEST(ExactEvalTest, PerturbingConvergedProfileNeverHelps) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  CfrPlusSolver solver(tree);
  solver.Run(1000);
  const auto avg = solver.AveragePolicy();
  const double base = NashConv(*tree, *avg[0], *avg[1]).nashconv;
  for (double eps : {0.1, 0.5, 1.0}) {
    const double nc =
        NashConv(*tree, *Perturb(*avg[0], eps, 3), *Perturb(*avg[1], eps, 4))
            .nashconv;
    EXPECT_GE(nc, base - 1e-9) << eps;
  }
}

TEST(ExactEvalTest, KuhnNashRecoversGameValue) {
  auto tree = CachedGameTree(GameId::kKuhnPoker);
  CfrPlusSolver solver(tree);
  solver.Run(10000);
  const auto avg = solver.AveragePolicy();
  const double v = oracle::ExpectedValue(tree->game(), *avg[0], *avg[1]);
  EXPECT_NEAR(v, -1.0 / 18, 1e-3);
  // A best responder against a Nash profile earns the game value from each
  // seat.
  EXPECT_NEAR(oracle::BestResponseValue(tree->game(), *avg[1], 0), -1.0 / 18, 1e-3);
  EXPECT_NEAR(oracle::BestResponseValue(tree->game(), *avg[0], 1), 1.0 / 18, 1e-3);
  const auto report = NashConv(*tree, *avg[0], *avg[1], v);
  ASSERT_TRUE(report.game_value_estimate.has_value());
  EXPECT_EQ(*report.game_value_estimate, v);
}

}  // namespace
}  // namespace abr
