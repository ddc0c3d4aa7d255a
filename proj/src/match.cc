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


#include "abr/match.h"

#include <cmath>

namespace abr {

Action PolicyAgent::Act(const State& state, std::mt19937_64& rng) {
  const std::vector<Action> legal = state.LegalActions();
  const std::vector<double> probs = policy_->ActionProbabilities(state);
  return legal[SampleIndex(probs, rng)];
}

void AbrAgent::NewGame(Player seat) {
  if (!searchers_[seat]) {
    throw ConfigError("agent '" + name_ + "' has no searcher for seat " +
                      std::to_string(seat));
  }
  tree_ = std::make_unique<SearchTree>(seat);
  decisions_ = 0;
}

Action AbrAgent::Act(const State& state, std::mt19937_64& rng) {
  const Player seat = state.CurrentPlayer();
  ABR_REQUIRE(tree_ && tree_->seat() == seat, "AbrAgent acting out of turn");
  return searchers_[seat]
      ->AbrAction(state.Key(seat), *tree_, rng, /*training=*/false,
                  decisions_++)
      .action;
}

MatchReport PlayMatch(const Game& game, Agent& row, Agent& col,
                      const MatchConfig& config) {
  ABR_REQUIRE(config.num_games >= 1, "a match needs at least one game");
  MatchReport report;
  report.num_games = config.num_games;
  report.alternate_seats = config.alternate_seats;
  std::array<double, 2> sum_by_seat = {0, 0};
  double sum = 0, sum_sq = 0;
  std::string log;
  std::vector<double> probs;
  for (int g = 0; g < config.num_games; ++g) {
    const Player row_seat = config.alternate_seats ? g % 2 : 0;
    const std::uint64_t pair =
        static_cast<std::uint64_t>(config.alternate_seats ? g / 2 : g);
    std::mt19937_64 rng(MixSeed(config.seed, pair));
    std::array<Agent*, 2> seats = {&row, &col};
    if (row_seat == 1) std::swap(seats[0], seats[1]);
    seats[0]->NewGame(0);
    seats[1]->NewGame(1);
    std::unique_ptr<State> state = game.NewInitialState();
    while (!state->IsTerminal()) {
      if (state->IsChanceNode()) {
        const ActionsAndProbs outcomes = state->ChanceOutcomes();
        probs.clear();
        for (const auto& [a, p] : outcomes) probs.push_back(p);
        state->ApplyAction(outcomes[SampleIndex(probs, rng)].first);
      } else {
        state->ApplyAction(seats[state->CurrentPlayer()]->Act(*state, rng));
      }
    }
    const double r = state->Returns()[row_seat];
    sum += r;
    sum_sq += r * r;
    sum_by_seat[row_seat] += r;
    ++report.games_by_seat[row_seat];
    std::string line = std::to_string(g) + " " + std::to_string(row_seat) + " " +
                       std::to_string(r) + " |";
    for (const PlayerAction& pa : state->History()) {
      line += " " + std::to_string(pa.action);
    }
    log += line + "\n";
  }
  const double n = config.num_games;
  report.row_mean = sum / n;
  report.col_mean = -report.row_mean;
  if (config.num_games > 1) {
    const double var =
        std::max(0.0, (sum_sq - n * report.row_mean * report.row_mean) / (n - 1));
    report.row_ci95 = 1.96 * std::sqrt(var / n);
  }
  for (int s = 0; s < 2; ++s) {
    if (report.games_by_seat[s] > 0) {
      report.row_mean_by_seat[s] = sum_by_seat[s] / report.games_by_seat[s];
    }
  }
  report.log_digest = HexDigest(Fnv1a64(log));
  return report;
}

}  // namespace abr
