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


#include "abr/beliefs.h"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace abr {

namespace {

struct Collector {
  const InfoStateKey& target;
  const Policy& opponent;
  std::vector<std::shared_ptr<const State>> support;
  std::vector<double> chance_reach;
  std::vector<double> opponent_reach;

  void Walk(std::unique_ptr<State> state, double chance, double opp) {
    if (state->IsTerminal()) return;
    const std::string obs = state->InformationStateString(target.player);
    if (!IsTokenPrefix(obs, target.observation)) return;
    const Player to_move = state->CurrentPlayer();
    if (to_move == target.player && obs == target.observation) {
      support.push_back(std::move(state));
      chance_reach.push_back(chance);
      opponent_reach.push_back(opp);
      return;
    }
    if (to_move == kChancePlayerId) {
      for (const auto& [a, p] : state->ChanceOutcomes()) {
        Walk(state->Child(a), chance * p, opp);
      }
      return;
    }
    const std::vector<Action> legal = state->LegalActions();
    if (to_move == target.player) {
      for (Action a : legal) Walk(state->Child(a), chance, opp);
      return;
    }
    const std::vector<double> probs =
        opponent.ActionProbabilities(state->Key(to_move), legal);
    for (size_t i = 0; i < legal.size(); ++i) {
      Walk(state->Child(legal[i]), chance, opp * probs[i]);
    }
  }
};

}  // namespace

BeliefDistribution Posterior(const Game& game, const InfoStateKey& key,
                             const Policy& opponent) {
  Collector c{key, opponent, {}, {}, {}};
  c.Walk(game.NewInitialState(), 1.0, 1.0);
  ABR_REQUIRE(!c.support.empty(),
              "no history is consistent with information state '" +
                  key.observation + "'");
  BeliefDistribution belief;
  belief.infostate = key;
  const size_t n = c.support.size();
  belief.weights.resize(n);
  double total = 0;
  for (size_t k = 0; k < n; ++k) {
    belief.weights[k] = c.chance_reach[k] * c.opponent_reach[k];
    total += belief.weights[k];
  }
  if (total <= 0) {
    belief.degenerate = true;
    total = 0;
    for (size_t k = 0; k < n; ++k) total += belief.weights[k] = c.chance_reach[k];
  }
  double running = 0;
  belief.cumulative.resize(n);
  for (size_t k = 0; k < n; ++k) {
    belief.weights[k] /= total;
    running += belief.weights[k];
    belief.cumulative[k] = running;
  }
  belief.support = std::move(c.support);
  return belief;
}

std::unique_ptr<State> SampleHistory(const BeliefDistribution& belief,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, belief.cumulative.back());
  const double u = uniform(rng);
  size_t k = std::upper_bound(belief.cumulative.begin(),
                              belief.cumulative.end(), u) -
             belief.cumulative.begin();
  k = std::min(k, belief.support.size() - 1);
  // Skip zero-weight entries that upper_bound can land on at boundaries.
  while (belief.weights[k] == 0 && k + 1 < belief.support.size()) ++k;
  return belief.support[k]->Clone();
}

std::string DescribeBelief(const BeliefDistribution& belief) {
  std::ostringstream os;
  os.precision(17);
  os << "infostate\t" << belief.infostate.observation << "\n";
  os << "support\t" << belief.support.size() << "\n";
  os << "degenerate\t" << (belief.degenerate ? "true" : "false") << "\n";
  for (size_t k = 0; k < belief.support.size(); ++k) {
    os << belief.weights[k] << "\t" << belief.support[k]->ToString() << "\n";
  }
  return os.str();
}

std::shared_ptr<const BeliefDistribution> BeliefCache::Get(
    const InfoStateKey& key) {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key.observation);
    if (it != cache_.end()) return it->second;
  }
  auto belief = std::make_shared<const BeliefDistribution>(
      Posterior(*game_, key, *opponent_));
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(key.observation, belief);
  if (inserted && belief->degenerate) ++degenerate_;
  return it->second;
}

int BeliefCache::degenerate_count() const {
  std::shared_lock lock(mu_);
  return degenerate_;
}

size_t BeliefCache::size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

}  // namespace abr
