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


#ifndef ABR_SEARCH_H_
#define ABR_SEARCH_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "abr/beliefs.h"
#include "abr/evaluator.h"
#include "abr/game.h"
#include "abr/policy.h"

namespace abr {

struct SearchConfig {
  int num_simulations = 800;
  double uct_c = 2.6;
  int virtual_loss = 4;
  int num_threads = 1;
  int temperature_moves = 4;
  // Training decisions mix Dirichlet(alpha) noise into the root prior with
  // weight root_noise_fraction; alpha = 0 disables it.
  double root_noise_alpha = 0;
  double root_noise_fraction = 0.25;
  std::uint64_t seed = 0;

  // Throws ConfigError on out-of-range fields.
  void Validate() const;
};

// Per-action statistics of one searcher information state. All access is
// serialized by a per-node mutex.
class SearchNode {
 public:
  struct Edge {
    Action action;
    double prior;
    std::int64_t visits;   // N(a), completed simulations only.
    double total_value;    // W(a), searcher's game units.
    int pending;           // Simulations in flight holding virtual loss.
  };

  SearchNode(std::vector<Action> legal, std::vector<double> prior);

  // argmax_a Q(a) + c * p(a) * sqrt(sum_b N(b)) / (1 + N(a)) over effective
  // statistics (virtual loss included), Q = 0 when N = 0, ties to the lowest
  // action. Marks the chosen edge as pending.
  int SelectAndApplyVirtualLoss(double uct_c, int virtual_loss,
                                double max_utility);
  // prior <- (1 - fraction) * prior + fraction * noise.
  void MixPrior(std::span<const double> noise, double fraction);
  // Reverts one pending virtual loss on `edge`, then N += 1 and W += r.
  void Backup(int edge, double r);

  // Effective (N, W) of an edge: N + pending * vl, W - pending * vl * max_u.
  std::pair<double, double> EffectiveStats(int edge, int virtual_loss,
                                           double max_utility) const;
  std::vector<Edge> Edges() const;
  std::int64_t total_visits() const;
  int num_actions() const { return static_cast<int>(legal_.size()); }
  const std::vector<Action>& legal() const { return legal_; }

 private:
  mutable std::mutex mu_;
  const std::vector<Action> legal_;
  std::vector<double> prior_;
  std::vector<std::int64_t> visits_;
  std::vector<double> total_value_;
  std::vector<int> pending_;
};

// Searcher information states of one episode mapped to their nodes. Nodes
// are never removed, so returned pointers stay valid for the tree's lifetime.
class SearchTree {
 public:
  explicit SearchTree(Player seat) : seat_(seat) {}

  Player seat() const { return seat_; }
  SearchNode* Find(const std::string& observation) const;
  // Keeps the existing node if another simulation inserted it first.
  std::pair<SearchNode*, bool> Insert(const std::string& observation,
                                      std::unique_ptr<SearchNode> node);
  size_t size() const;
  std::vector<std::string> Keys() const;

 private:
  Player seat_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::unique_ptr<SearchNode>> nodes_;
};

struct TrajectoryStep {
  SearchNode* node;
  int edge;
};

struct Simulation {
  std::vector<TrajectoryStep> trajectory;  // Searcher (infostate, action).
  double value = 0;                        // Searcher's game units.
  bool expanded = false;                   // Ended by an expansion.
};

struct AbrDecision {
  Action action = 0;
  std::vector<Action> legal;
  std::vector<double> visit_policy;  // Aligned with `legal`; sums to 1.
  bool degenerate_belief = false;
};

struct Episode {
  std::vector<TrainingExample> examples;  // One per searcher decision.
  double episode_return = 0;              // Searcher's game units.
  std::vector<PlayerAction> history;
};

struct SearchDiagnostics {
  std::int64_t simulations = 0;
  std::int64_t expansions = 0;
  std::int64_t degenerate_beliefs = 0;
  std::int64_t max_tree_size = 0;
  double search_seconds = 0;
};

// IS-MCTS approximate best response for one seat against a known opponent
// policy. Opponent and chance decisions are sampled as environment noise;
// the tree holds searcher information states only. Simulations start from
// histories drawn from the exact posterior of the decision's information
// state. Safe to call from several threads on distinct trees.
class AbrSearcher {
 public:
  AbrSearcher(std::shared_ptr<const Game> game, Player seat,
              std::shared_ptr<const Policy> opponent,
              std::shared_ptr<const Evaluator> evaluator, SearchConfig config);

  const Game& game() const { return *game_; }
  Player seat() const { return seat_; }
  const SearchConfig& config() const { return config_; }
  const Policy& opponent() const { return *opponent_; }
  std::shared_ptr<const Policy> shared_opponent() const { return opponent_; }
  std::shared_ptr<const Evaluator> evaluator() const { return evaluator_; }

  // Walks from `h`, applying virtual loss along the selected edges, until it
  // reaches a terminal or expands a new searcher information state.
  Simulation RunSimulation(std::unique_ptr<State> h, SearchTree& tree,
                           std::mt19937_64& rng) const;
  // Reverts the virtual losses of `sim` and backs its value up.
  static void UpdateSearchTree(const Simulation& sim);

  // Runs num_simulations simulations from `key` and picks an action: sampled
  // in proportion to visits for training decisions before temperature_moves,
  // argmax visits (ties to the lowest action) otherwise.
  AbrDecision AbrAction(const InfoStateKey& key, SearchTree& tree,
                        std::mt19937_64& rng, bool training,
                        int decision_index) const;

  // Plays one game with a fresh tree; the searcher acts through AbrAction.
  Episode PlayEpisode(std::mt19937_64& rng, bool training) const;

  SearchDiagnostics diagnostics() const;
  std::shared_ptr<const BeliefDistribution> Belief(
      const InfoStateKey& key) const;

 private:
  // Evaluates the searcher information state of `state` into a new node.
  std::unique_ptr<SearchNode> Expand(const State& state, double* value) const;
  void RunSimulations(const BeliefDistribution& belief, SearchTree& tree,
                      std::mt19937_64& rng) const;

  std::shared_ptr<const Game> game_;
  Player seat_;
  std::shared_ptr<const Policy> opponent_;
  std::shared_ptr<const Evaluator> evaluator_;
  SearchConfig config_;
  double max_utility_;
  // The opponent policy is fixed, so posteriors stay valid across episodes.
  mutable BeliefCache beliefs_;

  mutable std::atomic<std::int64_t> simulations_{0};
  mutable std::atomic<std::int64_t> expansions_{0};
  mutable std::atomic<std::int64_t> degenerate_{0};
  mutable std::atomic<std::int64_t> max_tree_size_{0};
  mutable std::atomic<std::int64_t> search_nanos_{0};
};

// Greedy evaluation-mode search policy: at each key, a fresh tree seeded by
// MixSeed(seed, Fnv1a64(key)) and argmax visits. Results are memoized, so
// the policy is deterministic and one-hot.
class SearchBackedPolicy final : public Policy {
 public:
  explicit SearchBackedPolicy(std::shared_ptr<const AbrSearcher> searcher);
  PolicyKind kind() const override { return PolicyKind::kSearchBacked; }
  std::vector<double> ActionProbabilities(
      const InfoStateKey& key, std::span<const Action> legal) const override;
  using Policy::ActionProbabilities;
  std::string Describe() const override { return "abr_search"; }
  Action GreedyAction(const InfoStateKey& key) const;
  size_t num_cached() const;
  std::unordered_map<std::string, Action> Snapshot() const;

 private:
  std::shared_ptr<const AbrSearcher> searcher_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Action> cache_;
};

}  // namespace abr

#endif  // ABR_SEARCH_H_
