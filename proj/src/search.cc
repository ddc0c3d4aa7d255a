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


#include "abr/search.h"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace abr {

void SearchConfig::Validate() const {
  if (num_simulations < 1) throw ConfigError("num_simulations must be >= 1");
  if (!(uct_c > 0)) throw ConfigError("uct_c must be > 0");
  if (virtual_loss < 0) throw ConfigError("virtual_loss must be >= 0");
  if (num_threads < 1) throw ConfigError("num_threads must be >= 1");
  if (temperature_moves < 0) {
    throw ConfigError("temperature_moves must be >= 0");
  }
  if (root_noise_alpha < 0 || root_noise_fraction < 0 ||
      root_noise_fraction > 1) {
    throw ConfigError("root noise needs alpha >= 0 and fraction in [0, 1]");
  }
}

SearchNode::SearchNode(std::vector<Action> legal, std::vector<double> prior)
    : legal_(std::move(legal)),
      prior_(std::move(prior)),
      visits_(legal_.size(), 0),
      total_value_(legal_.size(), 0.0),
      pending_(legal_.size(), 0) {
  ABR_REQUIRE(!legal_.empty() && legal_.size() == prior_.size(),
              "search node needs one prior per legal action");
}

int SearchNode::SelectAndApplyVirtualLoss(double uct_c, int virtual_loss,
                                          double max_utility) {
  std::lock_guard<std::mutex> lock(mu_);
  const int num = static_cast<int>(legal_.size());
  double sum_n = 0;
  for (int i = 0; i < num; ++i) {
    sum_n += static_cast<double>(visits_[i] + pending_[i] * virtual_loss);
  }
  const double sqrt_total = std::sqrt(sum_n);
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < num; ++i) {
    const double n = static_cast<double>(visits_[i] + pending_[i] * virtual_loss);
    const double w = total_value_[i] - pending_[i] * virtual_loss * max_utility;
    const double q = n > 0 ? w / n : 0.0;
    const double score = q + uct_c * prior_[i] * sqrt_total / (1.0 + n);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  ++pending_[best];
  return best;
}

void SearchNode::MixPrior(std::span<const double> noise, double fraction) {
  std::lock_guard<std::mutex> lock(mu_);
  ABR_REQUIRE(noise.size() == prior_.size(), "noise length mismatch");
  for (size_t i = 0; i < prior_.size(); ++i) {
    prior_[i] = (1 - fraction) * prior_[i] + fraction * noise[i];
  }
}

void SearchNode::Backup(int edge, double r) {
  std::lock_guard<std::mutex> lock(mu_);
  ABR_REQUIRE(pending_[edge] > 0, "backup without a pending virtual loss");
  --pending_[edge];
  ++visits_[edge];
  total_value_[edge] += r;
}

std::pair<double, double> SearchNode::EffectiveStats(int edge, int virtual_loss,
                                                     double max_utility) const {
  std::lock_guard<std::mutex> lock(mu_);
  return {static_cast<double>(visits_[edge] + pending_[edge] * virtual_loss),
          total_value_[edge] - pending_[edge] * virtual_loss * max_utility};
}

std::vector<SearchNode::Edge> SearchNode::Edges() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Edge> edges;
  edges.reserve(legal_.size());
  for (size_t i = 0; i < legal_.size(); ++i) {
    edges.push_back(
        {legal_[i], prior_[i], visits_[i], total_value_[i], pending_[i]});
  }
  return edges;
}

std::int64_t SearchNode::total_visits() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::int64_t total = 0;
  for (std::int64_t n : visits_) total += n;
  return total;
}

SearchNode* SearchTree::Find(const std::string& observation) const {
  std::shared_lock lock(mu_);
  auto it = nodes_.find(observation);
  return it == nodes_.end() ? nullptr : it->second.get();
}

std::pair<SearchNode*, bool> SearchTree::Insert(
    const std::string& observation, std::unique_ptr<SearchNode> node) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = nodes_.try_emplace(observation, std::move(node));
  return {it->second.get(), inserted};
}

size_t SearchTree::size() const {
  std::shared_lock lock(mu_);
  return nodes_.size();
}

std::vector<std::string> SearchTree::Keys() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> keys;
  keys.reserve(nodes_.size());
  for (const auto& [key, node] : nodes_) keys.push_back(key);
  return keys;
}

AbrSearcher::AbrSearcher(std::shared_ptr<const Game> game, Player seat,
                         std::shared_ptr<const Policy> opponent,
                         std::shared_ptr<const Evaluator> evaluator,
                         SearchConfig config)
    : game_(std::move(game)),
      seat_(seat),
      opponent_(std::move(opponent)),
      evaluator_(std::move(evaluator)),
      config_(config),
      max_utility_(game_->max_utility()),
      beliefs_(game_, opponent_) {
  ABR_REQUIRE(seat == 0 || seat == 1, "searcher seat must be 0 or 1");
  ABR_REQUIRE(opponent_ && evaluator_, "searcher needs an opponent and evaluator");
  config_.Validate();
}

std::unique_ptr<SearchNode> AbrSearcher::Expand(const State& state,
                                                double* value) const {
  std::vector<Action> legal = state.LegalActions();
  const InfoStateKey key = state.Key(seat_);
  const std::vector<double> features = state.InformationStateTensor(seat_);
  EvaluatorOutput out = evaluator_->Evaluate(features, key, legal);
  if (out.prior.size() != legal.size() ||
      !ValidateDistribution(out.prior, 1e-6).empty() ||
      !std::isfinite(out.value) || std::abs(out.value) > 1.0 + 1e-9) {
    throw NumericalError("evaluator failure at '" + key.observation +
                         "': invalid prior or value");
  }
  *value = out.value * max_utility_;
  expansions_.fetch_add(1, std::memory_order_relaxed);
  return std::make_unique<SearchNode>(std::move(legal), std::move(out.prior));
}

Simulation AbrSearcher::RunSimulation(std::unique_ptr<State> h,
                                      SearchTree& tree,
                                      std::mt19937_64& rng) const {
  Simulation sim;
  State& s = *h;
  std::vector<double> probs;
  while (true) {
    const Player p = s.CurrentPlayer();
    if (p == kTerminalPlayerId) {
      sim.value = s.Returns()[seat_];
      return sim;
    }
    if (p == kChancePlayerId) {
      const ActionsAndProbs outcomes = s.ChanceOutcomes();
      probs.clear();
      for (const auto& [a, prob] : outcomes) probs.push_back(prob);
      s.ApplyAction(outcomes[SampleIndex(probs, rng)].first);
    } else if (p != seat_) {
      const std::vector<Action> legal = s.LegalActions();
      probs = opponent_->ActionProbabilities(s.Key(p), legal);
      s.ApplyAction(legal[SampleIndex(probs, rng)]);
    } else {
      const InfoStateKey key = s.Key(seat_);
      SearchNode* node = tree.Find(key.observation);
      if (node == nullptr) {
        tree.Insert(key.observation, Expand(s, &sim.value));
        sim.expanded = true;
        return sim;
      }
      const int edge = node->SelectAndApplyVirtualLoss(
          config_.uct_c, config_.virtual_loss, max_utility_);
      sim.trajectory.push_back({node, edge});
      s.ApplyAction(node->legal()[edge]);
    }
  }
}

void AbrSearcher::UpdateSearchTree(const Simulation& sim) {
  for (const TrajectoryStep& step : sim.trajectory) {
    step.node->Backup(step.edge, sim.value);
  }
}

std::shared_ptr<const BeliefDistribution> AbrSearcher::Belief(
    const InfoStateKey& key) const {
  return beliefs_.Get(key);
}

void AbrSearcher::RunSimulations(const BeliefDistribution& belief,
                                 SearchTree& tree, std::mt19937_64& rng) const {
  const int n = config_.num_simulations;
  const int threads = std::min(config_.num_threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) {
      UpdateSearchTree(RunSimulation(SampleHistory(belief, rng), tree, rng));
    }
    return;
  }
  std::vector<std::uint64_t> seeds(threads);
  for (auto& seed : seeds) seed = rng();
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      std::mt19937_64 local(seeds[t]);
      try {
        while (next.fetch_add(1) < n) {
          UpdateSearchTree(
              RunSimulation(SampleHistory(belief, local), tree, local));
        }
      } catch (...) {
        errors[t] = std::current_exception();
        next.store(n);
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

AbrDecision AbrSearcher::AbrAction(const InfoStateKey& key, SearchTree& tree,
                                   std::mt19937_64& rng, bool training,
                                   int decision_index) const {
  ABR_REQUIRE(key.player == seat_ && tree.seat() == seat_,
              "abr_action needs a searcher information state");
  const auto start = std::chrono::steady_clock::now();
  const std::shared_ptr<const BeliefDistribution> belief = beliefs_.Get(key);
  SearchNode* root = tree.Find(key.observation);
  if (root == nullptr) {
    double unused;
    std::unique_ptr<State> h = SampleHistory(*belief, rng);
    ABR_REQUIRE(!h->IsTerminal() && h->CurrentPlayer() == seat_,
                "abr_action called at a state where the searcher does not act");
    root = tree.Insert(key.observation, Expand(*h, &unused)).first;
  }
  if (training && config_.root_noise_alpha > 0) {
    std::gamma_distribution<double> gamma(config_.root_noise_alpha, 1.0);
    std::vector<double> noise(root->num_actions());
    double total = 0;
    for (double& x : noise) total += (x = gamma(rng));
    if (total > 0) {
      for (double& x : noise) x /= total;
      root->MixPrior(noise, config_.root_noise_fraction);
    }
  }
  RunSimulations(*belief, tree, rng);

  AbrDecision decision;
  decision.degenerate_belief = belief->degenerate;
  const std::vector<SearchNode::Edge> edges = root->Edges();
  std::int64_t total = 0;
  for (const auto& e : edges) total += e.visits;
  std::vector<double> visits;
  visits.reserve(edges.size());
  int best = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    decision.legal.push_back(edges[i].action);
    visits.push_back(static_cast<double>(edges[i].visits));
    decision.visit_policy.push_back(visits.back() / static_cast<double>(total));
    if (edges[i].visits > edges[best].visits) best = static_cast<int>(i);
  }
  if (training && decision_index < config_.temperature_moves) {
    best = SampleIndex(visits, rng);
  }
  decision.action = decision.legal[best];

  simulations_.fetch_add(config_.num_simulations, std::memory_order_relaxed);
  if (decision.degenerate_belief) degenerate_.fetch_add(1);
  const auto size = static_cast<std::int64_t>(tree.size());
  std::int64_t prev = max_tree_size_.load();
  while (size > prev && !max_tree_size_.compare_exchange_weak(prev, size)) {
  }
  search_nanos_.fetch_add(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - start)
          .count(),
      std::memory_order_relaxed);
  return decision;
}

Episode AbrSearcher::PlayEpisode(std::mt19937_64& rng, bool training) const {
  Episode episode;
  SearchTree tree(seat_);
  std::unique_ptr<State> state = game_->NewInitialState();
  std::vector<double> probs;
  int decisions = 0;
  while (!state->IsTerminal()) {
    const Player p = state->CurrentPlayer();
    if (p == kChancePlayerId) {
      const ActionsAndProbs outcomes = state->ChanceOutcomes();
      probs.clear();
      for (const auto& [a, prob] : outcomes) probs.push_back(prob);
      state->ApplyAction(outcomes[SampleIndex(probs, rng)].first);
    } else if (p != seat_) {
      const std::vector<Action> legal = state->LegalActions();
      probs = opponent_->ActionProbabilities(state->Key(p), legal);
      state->ApplyAction(legal[SampleIndex(probs, rng)]);
    } else {
      const InfoStateKey key = state->Key(seat_);
      AbrDecision d = AbrAction(key, tree, rng, training, decisions++);
      TrainingExample ex;
      ex.features = state->InformationStateTensor(seat_);
      ex.key = key.observation;
      ex.legal = std::move(d.legal);
      ex.target_policy = std::move(d.visit_policy);
      episode.examples.push_back(std::move(ex));
      state->ApplyAction(d.action);
    }
  }
  episode.episode_return = state->Returns()[seat_];
  for (TrainingExample& ex : episode.examples) {
    ex.z = episode.episode_return / max_utility_;
  }
  episode.history = state->History();
  return episode;
}

SearchDiagnostics AbrSearcher::diagnostics() const {
  SearchDiagnostics d;
  d.simulations = simulations_.load();
  d.expansions = expansions_.load();
  d.degenerate_beliefs = degenerate_.load();
  d.max_tree_size = max_tree_size_.load();
  d.search_seconds = static_cast<double>(search_nanos_.load()) * 1e-9;
  return d;
}

SearchBackedPolicy::SearchBackedPolicy(
    std::shared_ptr<const AbrSearcher> searcher)
    : searcher_(std::move(searcher)) {}

Action SearchBackedPolicy::GreedyAction(const InfoStateKey& key) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key.observation);
    if (it != cache_.end()) return it->second;
  }
  SearchTree tree(searcher_->seat());
  std::mt19937_64 rng(
      MixSeed(searcher_->config().seed, Fnv1a64(key.observation)));
  const Action action =
      searcher_->AbrAction(key, tree, rng, /*training=*/false, 0).action;
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key.observation, action);
  return action;
}

std::vector<double> SearchBackedPolicy::ActionProbabilities(
    const InfoStateKey& key, std::span<const Action> legal) const {
  const Action action = GreedyAction(key);
  std::vector<double> probs(legal.size(), 0.0);
  for (size_t i = 0; i < legal.size(); ++i) {
    if (legal[i] == action) probs[i] = 1.0;
  }
  return probs;
}

size_t SearchBackedPolicy::num_cached() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

std::unordered_map<std::string, Action> SearchBackedPolicy::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_;
}

}  // namespace abr
