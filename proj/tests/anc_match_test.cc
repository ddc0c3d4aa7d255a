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
#include <memory>

#include "abr/anc.h"
#include "abr/cfr.h"
#include "abr/exact_eval.h"
#include "abr/match.h"
#include "abr/training.h"
#include "gtest/gtest.h"

namespace abr {
namespace {

using Pair = std::array<std::shared_ptr<const AbrSearcher>, 2>;

Pair ZeroSearchers(GameId id, const std::array<std::shared_ptr<const Policy>, 2>& target,
                   int sims) {
  SearchConfig c;
  c.num_simulations = sims;
  c.seed = 3;
  auto game = LoadGame(id);
  Pair out;
  for (Player seat : {0, 1}) {
    out[seat] = std::make_shared<AbrSearcher>(
        game, seat, target[1 - seat], std::make_shared<ZeroEvaluator>(), c);
  }
  return out;
}

TEST(AncTest, ExactNeverExceedsNashConv) {
  for (GameId id : {GameId::kKuhnPoker, GameId::kLeducPoker}) {
    auto tree = CachedGameTree(id);
    std::shared_ptr<const Policy> uniform = std::make_shared<UniformPolicy>();
    const AncReport r = ComputeAnc(tree.get(), ZeroSearchers(id, {uniform, uniform}, 64),
                                   AncProtocol::kExact);
    ASSERT_TRUE(r.nashconv.has_value());
    EXPECT_LE(r.anc, *r.nashconv + 1e-9);
    EXPECT_DOUBLE_EQ(r.anc, r.seats[0].value + r.seats[1].value);
    EXPECT_NEAR(*r.anc_percent, 100 * r.anc / *r.nashconv, 1e-12);
    for (Player seat : {0, 1}) {
      EXPECT_LE(r.seats[seat].value, *r.seats[seat].br_value + 1e-9);
      EXPECT_GT(r.seats[seat].num_infostates, 0);
    }
  }
}

TEST(AncTest, FrozenPolicyIsDeterministicAndMatchesItsValue) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  std::shared_ptr<const Policy> uniform = std::make_shared<UniformPolicy>();
  const Pair abr = ZeroSearchers(GameId::kLeducPoker, {uniform, uniform}, 32);
  const FrozenAbr a = FreezeAbr(*tree, abr[1]);
  const FrozenAbr b = FreezeAbr(*tree, abr[1]);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(SerializePolicy(*a.policy, GameId::kLeducPoker, 1),
            SerializePolicy(*b.policy, GameId::kLeducPoker, 1));
  for (const auto& [key, probs] : a.policy->table()) {
    int ones = 0;
    for (double p : probs) {
      EXPECT_TRUE(p == 0.0 || p == 1.0);
      ones += p == 1.0;
    }
    EXPECT_EQ(ones, 1);
  }
  EXPECT_NEAR(ExpectedValue(*tree, *uniform, *a.policy)[1], a.value, 1e-12);
}

TEST(AncTest, SampledIntervalCoversExact) {
  auto tree = CachedGameTree(GameId::kKuhnPoker);
  std::shared_ptr<const Policy> uniform = std::make_shared<UniformPolicy>();
  const Pair abr = ZeroSearchers(GameId::kKuhnPoker, {uniform, uniform}, 64);
  const AncReport exact = ComputeAnc(tree.get(), abr, AncProtocol::kExact);
  const AncReport sampled =
      ComputeAnc(tree.get(), abr, AncProtocol::kSampled, 4000, 9);
  ASSERT_TRUE(sampled.ci95.has_value());
  EXPECT_EQ(sampled.seats[0].num_games, 4000);
  // Sampled play uses a fresh tree per game, so its policy can differ from
  // the frozen one; the interval is checked at a generous 4 half-widths.
  EXPECT_NEAR(sampled.anc, exact.anc, 4 * *sampled.ci95);
  const AncReport again =
      ComputeAnc(tree.get(), abr, AncProtocol::kSampled, 4000, 9);
  EXPECT_EQ(again.anc, sampled.anc);
}

TEST(AncTest, ExactRequiresATree) {
  std::shared_ptr<const Policy> uniform = std::make_shared<UniformPolicy>();
  EXPECT_ANY_THROW(ComputeAnc(nullptr, ZeroSearchers(GameId::kKuhnPoker,
                                                     {uniform, uniform}, 8),
                              AncProtocol::kExact));
}

TEST(MatchTest, CfrBeatsUniformWithTheExactSign) {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  CfrPlusSolver solver(tree);
  solver.Run(200);
  const auto avg = solver.AveragePolicy();
  auto uniform = std::make_shared<UniformPolicy>();
  // Seat-alternated exact mean of the row agent.
  const double exact = 0.5 * (ExpectedValue(*tree, *avg[0], *uniform)[0] +
                              ExpectedValue(*tree, *uniform, *avg[1])[1]);
  ASSERT_GT(exact, 0);
  struct BySeat final : Policy {
    std::array<std::shared_ptr<const TabularPolicy>, 2> p;
    PolicyKind kind() const override { return PolicyKind::kTabular; }
    std::vector<double> ActionProbabilities(
        const InfoStateKey& key, std::span<const Action> legal) const override {
      return p[key.player]->ActionProbabilities(key, legal);
    }
    std::string Describe() const override { return "cfr"; }
  };
  auto by_seat = std::make_shared<BySeat>();
  by_seat->p = avg;
  PolicyAgent row("cfr", by_seat);
  PolicyAgent col("uniform", uniform);
  const MatchReport r = PlayMatch(tree->game(), row, col, {.num_games = 1024, .seed = 1});
  EXPECT_GT(r.row_mean, 0);
  EXPECT_EQ(r.col_mean, -r.row_mean);
  EXPECT_EQ(r.games_by_seat[0], 512);
  EXPECT_EQ(r.games_by_seat[1], 512);
  EXPECT_NEAR(r.row_mean, exact, r.row_ci95 * 1.5);
  const MatchReport again = PlayMatch(tree->game(), row, col, {.num_games = 1024, .seed = 1});
  EXPECT_EQ(again.log_digest, r.log_digest);
  EXPECT_EQ(again.row_mean, r.row_mean);
}

TEST(MatchTest, SelfPlayIntervalContainsZero) {
  auto game = LoadGame("leduc_poker");
  auto uniform = std::make_shared<UniformPolicy>();
  PolicyAgent a("a", uniform);
  PolicyAgent b("b", uniform);
  const MatchReport r = PlayMatch(*game, a, b, {.num_games = 1024, .seed = 4});
  EXPECT_LE(std::abs(r.row_mean), r.row_ci95);
}

TEST(MatchTest, FixedSeatsWithoutAlternation) {
  auto game = LoadGame("kuhn_poker");
  auto uniform = std::make_shared<UniformPolicy>();
  PolicyAgent a("a", uniform);
  PolicyAgent b("b", uniform);
  const MatchReport r =
      PlayMatch(*game, a, b, {.num_games = 10, .alternate_seats = false, .seed = 2});
  EXPECT_EQ(r.games_by_seat[0], 10);
  EXPECT_EQ(r.games_by_seat[1], 0);
}

TEST(MatchTest, AbrAgentBeatsUniformInTicTacToe) {
  auto game = LoadGame("tic_tac_toe");
  std::shared_ptr<const Policy> uniform = std::make_shared<UniformPolicy>();
  AbrAgent abr("abr", ZeroSearchers(GameId::kTicTacToe, {uniform, uniform}, 200));
  PolicyAgent col("uniform", uniform);
  const MatchReport r = PlayMatch(*game, abr, col, {.num_games = 40, .seed = 5});
  EXPECT_GT(r.row_mean, 0.5);
}

}  // namespace
}  // namespace abr
