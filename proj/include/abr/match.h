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


#ifndef ABR_MATCH_H_
#define ABR_MATCH_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>

#include "abr/game.h"
#include "abr/policy.h"
#include "abr/search.h"

namespace abr {

// A game-playing participant. NewGame is called before every game.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual void NewGame(Player seat) { (void)seat; }
  virtual Action Act(const State& state, std::mt19937_64& rng) = 0;
};

// Samples from a fixed policy.
class PolicyAgent final : public Agent {
 public:
  PolicyAgent(std::string name, std::shared_ptr<const Policy> policy)
      : name_(std::move(name)), policy_(std::move(policy)) {}
  std::string name() const override { return name_; }
  Action Act(const State& state, std::mt19937_64& rng) override;

 private:
  std::string name_;
  std::shared_ptr<const Policy> policy_;
};

// Searches at play time with the seat's searcher (argmax visits, one tree
// per game). Seats without a searcher cannot be played.
class AbrAgent final : public Agent {
 public:
  AbrAgent(std::string name,
           std::array<std::shared_ptr<const AbrSearcher>, 2> searchers)
      : name_(std::move(name)), searchers_(std::move(searchers)) {}
  std::string name() const override { return name_; }
  void NewGame(Player seat) override;
  Action Act(const State& state, std::mt19937_64& rng) override;

 private:
  std::string name_;
  std::array<std::shared_ptr<const AbrSearcher>, 2> searchers_;
  std::unique_ptr<SearchTree> tree_;
  int decisions_ = 0;
};

struct MatchConfig {
  int num_games = 1024;
  bool alternate_seats = true;
  std::uint64_t seed = 0;
};

struct MatchReport {
  int num_games = 0;
  bool alternate_seats = true;
  double row_mean = 0;  // Row agent's mean return.
  double col_mean = 0;  // Exactly -row_mean.
  double row_ci95 = 0;  // Half-width of the normal 95% interval.
  // Row agent's mean return and game count by the seat it occupied.
  std::array<double, 2> row_mean_by_seat = {0, 0};
  std::array<int, 2> games_by_seat = {0, 0};
  std::string log_digest;  // FNV-1a over the per-game log lines.
};

// Plays num_games games. With alternation, game g seats the row agent at
// g % 2, and games 2k and 2k + 1 share the seed MixSeed(seed, k). Results
// are aggregated in game order.
MatchReport PlayMatch(const Game& game, Agent& row, Agent& col,
                      const MatchConfig& config);

}  // namespace abr

#endif  // ABR_MATCH_H_
