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


#ifndef ABR_BELIEFS_H_
#define ABR_BELIEFS_H_

#include <memory>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "abr/game.h"
#include "abr/policy.h"

namespace abr {

// Exact posterior over the ground histories in one information state of the
// searching player, given the opponent's policy. Immutable once built.
struct BeliefDistribution {
  InfoStateKey infostate;
  std::vector<std::shared_ptr<const State>> support;
  std::vector<double> weights;     // Normalized.
  std::vector<double> cumulative;  // Running sums of weights.
  // True when the opponent's policy gives every consistent history zero
  // probability and the weights fall back to chance-only reach.
  bool degenerate = false;
};

// Enumerates every history consistent with `key` by walking from the root
// and pruning any branch whose searcher observation is not a token-prefix of
// the key. weight(h) is proportional to chance reach times opponent reach;
// the searcher's own action probabilities cancel. Throws ContractViolation
// when no history is consistent with the key.
BeliefDistribution Posterior(const Game& game, const InfoStateKey& key,
                             const Policy& opponent);

// Returns a fresh copy of support[k] with probability weights[k].
std::unique_ptr<State> SampleHistory(const BeliefDistribution& belief,
                                     std::mt19937_64& rng);

std::string DescribeBelief(const BeliefDistribution& belief);

// Memoizes posteriors for one (game, opponent policy) pair. Entries never
// go stale because the opponent policy is immutable. Concurrent readers,
// exclusive insertion.
class BeliefCache {
 public:
  BeliefCache(std::shared_ptr<const Game> game,
              std::shared_ptr<const Policy> opponent)
      : game_(std::move(game)), opponent_(std::move(opponent)) {}

  std::shared_ptr<const BeliefDistribution> Get(const InfoStateKey& key);
  int degenerate_count() const;
  size_t size() const;

 private:
  std::shared_ptr<const Game> game_;
  std::shared_ptr<const Policy> opponent_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const BeliefDistribution>>
      cache_;
  int degenerate_ = 0;
};

}  // namespace abr

#endif  // ABR_BELIEFS_H_
