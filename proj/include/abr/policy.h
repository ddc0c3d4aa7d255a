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


#ifndef ABR_POLICY_H_
#define ABR_POLICY_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "abr/game.h"

namespace abr {

enum class PolicyKind { kTabular, kUniform, kFixedRule, kSearchBacked };

std::string PolicyKindToString(PolicyKind kind);

// pi_i : S_i -> Delta(A_i(s)). Implementations are immutable after
// construction (apart from diagnostic counters) and safe to share between
// threads.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyKind kind() const = 0;
  // Returns a distribution aligned with `legal`.
  virtual std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const = 0;
  // Number of lookups that fell back to uniform.
  virtual std::int64_t miss_count() const { return 0; }
  virtual std::string Describe() const = 0;

  std::vector<double> ActionProbabilities(const State& state) const;
};

class UniformPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::kUniform; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const override;
  std::string Describe() const override { return "uniform"; }
  using Policy::ActionProbabilities;
};

// Explicit table keyed by information-state observation strings. Misses fall
// back to uniform and are counted.
class TabularPolicy final : public Policy {
 public:
  using Table = std::unordered_map<std::string, std::vector<double>>;

  TabularPolicy(GameId game, Player player, Table table = {});
  TabularPolicy(const TabularPolicy& other);
  TabularPolicy& operator=(const TabularPolicy&) = delete;

  PolicyKind kind() const override { return PolicyKind::kTabular; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const override;
  using Policy::ActionProbabilities;
  std::int64_t miss_count() const override { return misses_.load(); }
  std::string Describe() const override;

  GameId game() const { return game_; }
  // Seat the table was built for, or -1 when it covers both seats.
  Player player() const { return player_; }
  const Table& table() const { return table_; }
  // Throws ContractViolation on an invalid distribution.
  void Set(const std::string& observation, std::vector<double> probs);
  const std::vector<double>* Find(const std::string& observation) const;

 private:
  GameId game_;
  Player player_;
  Table table_;
  mutable std::atomic<std::int64_t> misses_{0};
};

enum class ChumpRule { kAlwaysFold, kAlwaysCall, kUniformRandom };

ChumpRule ChumpRuleFromString(const std::string& id);  // Throws ConfigError.
std::string ChumpRuleToString(ChumpRule rule);

// Deterministic rule-based policy. always_fold folds when folding is legal
// and otherwise checks/calls; always_call checks or calls and never raises.
class FixedRulePolicy final : public Policy {
 public:
  FixedRulePolicy(ChumpRule rule, GameId game);
  PolicyKind kind() const override { return PolicyKind::kFixedRule; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const override;
  using Policy::ActionProbabilities;
  std::string Describe() const override { return ChumpRuleToString(rule_); }
  ChumpRule rule() const { return rule_; }
  GameId game() const { return game_; }

 private:
  ChumpRule rule_;
  GameId game_;
};

// Throws ConfigError when the rule needs a poker-like game.
std::shared_ptr<const Policy> MakeChump(ChumpRule rule, GameId game);

// Mixes (1 - epsilon) * pi + epsilon * d at every stored information state,
// where d is a uniformly random point on the simplex drawn from a stream
// seeded by (seed, key).
std::shared_ptr<const TabularPolicy> Perturb(const TabularPolicy& policy,
                                             double epsilon,
                                             std::uint64_t seed);

// Tabulates `policy` at every information state of `player` (both seats when
// player is -1). Requires an enumerable game.
std::shared_ptr<TabularPolicy> ToTabular(const Policy& policy, GameId game,
                                         Player player);

// Random policy with a Dirichlet(1) distribution at every information state.
std::shared_ptr<TabularPolicy> RandomTabularPolicy(GameId game, Player player,
                                                   std::uint64_t seed);

// Policy file I/O; see README for the format. Serialization is canonical.
std::string SerializePolicy(const Policy& policy, GameId game, Player player);
void SavePolicy(const Policy& policy, GameId game, Player player,
                const std::string& path);
// Throws ConfigError on version mismatch, malformed lines, invalid
// distributions (naming the offending key) or a game id mismatch.
std::shared_ptr<const Policy> ParsePolicy(const std::string& text,
                                          GameId expected_game);
std::shared_ptr<const Policy> LoadPolicy(const std::string& path,
                                         GameId expected_game);

inline constexpr int kPolicyFormatVersion = 1;

// Checks a probability vector; returns an empty string when valid.
std::string ValidateDistribution(std::span<const double> probs,
                                 double tolerance = 1e-9);

}  // namespace abr

#endif  // ABR_POLICY_H_
