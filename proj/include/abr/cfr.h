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


#ifndef ABR_CFR_H_
#define ABR_CFR_H_

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "abr/exact_eval.h"
#include "abr/game_tree.h"
#include "abr/policy.h"

namespace abr {

// CFR+ with alternating updates, regret-matching+ (regrets clamped at zero
// after every update) and linearly weighted strategy averaging. Walks the
// full tree every iteration; single-threaded per instance.
class CfrPlusSolver {
 public:
  explicit CfrPlusSolver(std::shared_ptr<const GameTree> tree);

  // One iteration: update player 0, then player 1 against the updated
  // strategy of player 0.
  void Iterate();
  void Run(int iterations);

  int iteration() const { return iteration_; }
  const GameTree& tree() const { return *tree_; }

  // Average strategies at every information state; states with no
  // accumulated weight get uniform.
  std::array<DenseStrategy, 2> AverageStrategy() const;
  std::array<std::shared_ptr<const TabularPolicy>, 2> AveragePolicy() const;

  // Flat per-(infostate, action) cumulative regrets of one player.
  const std::vector<double>& regrets(Player p) const { return regrets_[p]; }

 private:
  double Traverse(int node, Player updating, double opponent_reach,
                  double own_reach);
  void ComputeCurrentStrategy(Player p);

  std::shared_ptr<const GameTree> tree_;
  int iteration_ = 0;
  // Offset of each infostate's first action in the flat arrays.
  std::array<std::vector<int>, 2> offsets_;
  std::array<std::vector<double>, 2> regrets_;
  std::array<std::vector<double>, 2> strategy_sum_;
  std::array<std::vector<double>, 2> current_;
  std::vector<double> regret_delta_;
  std::vector<double> own_reach_;
  std::vector<char> visited_;
};

}  // namespace abr

#endif  // ABR_CFR_H_
