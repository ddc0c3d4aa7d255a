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


#include "abr/cfr.h"

#include <algorithm>

namespace abr {

CfrPlusSolver::CfrPlusSolver(std::shared_ptr<const GameTree> tree)
    : tree_(std::move(tree)) {
  for (Player p = 0; p < 2; ++p) {
    int offset = 0;
    for (const InfoStateInfo& info : tree_->infostates(p)) {
      offsets_[p].push_back(offset);
      offset += static_cast<int>(info.legal.size());
    }
    offsets_[p].push_back(offset);
    regrets_[p].assign(offset, 0.0);
    strategy_sum_[p].assign(offset, 0.0);
    current_[p].assign(offset, 0.0);
    ComputeCurrentStrategy(p);
  }
}

void CfrPlusSolver::ComputeCurrentStrategy(Player p) {
  const auto& off = offsets_[p];
  for (size_t s = 0; s + 1 < off.size(); ++s) {
    const int begin = off[s], end = off[s + 1];
    double total = 0;
    for (int k = begin; k < end; ++k) total += regrets_[p][k];
    for (int k = begin; k < end; ++k) {
      current_[p][k] = total > 0 ? regrets_[p][k] / total
                                 : 1.0 / static_cast<double>(end - begin);
    }
  }
}

double CfrPlusSolver::Traverse(int n, Player updating, double opponent_reach,
                               double own_reach) {
  const GameTree::Node& node = tree_->node(n);
  if (node.player == kTerminalPlayerId) return tree_->Return(node, updating);
  if (node.player == kChancePlayerId) {
    double v = 0;
    for (int i = 0; i < node.num_children; ++i) {
      const double p = tree_->chance_prob(node, i);
      v += p * Traverse(tree_->child(node, i), updating, opponent_reach * p,
                        own_reach);
    }
    return v;
  }
  const int base = offsets_[node.player][node.infostate];
  const double* sigma = &current_[node.player][base];
  if (node.player != updating) {
    double v = 0;
    // No pruning on sigma == 0: the updating player's average strategy must
    // accumulate own-reach weight below every opponent action.
    for (int i = 0; i < node.num_children; ++i) {
      v += sigma[i] * Traverse(tree_->child(node, i), updating,
                               opponent_reach * sigma[i], own_reach);
    }
    return v;
  }
  double child_values[32];
  ABR_REQUIRE(node.num_children <= 32, "too many actions for CFR+ buffers");
  double v = 0;
  for (int i = 0; i < node.num_children; ++i) {
    child_values[i] = Traverse(tree_->child(node, i), updating, opponent_reach,
                               own_reach * sigma[i]);
    v += sigma[i] * child_values[i];
  }
  for (int i = 0; i < node.num_children; ++i) {
    regret_delta_[base + i] += opponent_reach * (child_values[i] - v);
  }
  own_reach_[node.infostate] = own_reach;
  visited_[node.infostate] = 1;
  return v;
}

void CfrPlusSolver::Iterate() {
  ++iteration_;
  const double weight = static_cast<double>(iteration_);
  for (Player p = 0; p < 2; ++p) {
    regret_delta_.assign(regrets_[p].size(), 0.0);
    own_reach_.assign(tree_->infostates(p).size(), 0.0);
    visited_.assign(tree_->infostates(p).size(), 0);
    Traverse(0, p, 1.0, 1.0);
    const auto& off = offsets_[p];
    for (size_t s = 0; s + 1 < off.size(); ++s) {
      if (!visited_[s]) continue;
      for (int k = off[s]; k < off[s + 1]; ++k) {
        strategy_sum_[p][k] += weight * own_reach_[s] * current_[p][k];
      }
    }
    for (size_t k = 0; k < regrets_[p].size(); ++k) {
      regrets_[p][k] = std::max(regrets_[p][k] + regret_delta_[k], 0.0);
    }
    ComputeCurrentStrategy(p);
  }
}

void CfrPlusSolver::Run(int iterations) {
  for (int i = 0; i < iterations; ++i) Iterate();
}

std::array<DenseStrategy, 2> CfrPlusSolver::AverageStrategy() const {
  std::array<DenseStrategy, 2> out;
  for (Player p = 0; p < 2; ++p) {
    const auto& off = offsets_[p];
    for (size_t s = 0; s + 1 < off.size(); ++s) {
      const int begin = off[s], end = off[s + 1];
      double total = 0;
      for (int k = begin; k < end; ++k) total += strategy_sum_[p][k];
      std::vector<double> probs(end - begin);
      for (int k = begin; k < end; ++k) {
        probs[k - begin] = total > 0 ? strategy_sum_[p][k] / total
                                     : 1.0 / static_cast<double>(end - begin);
      }
      out[p].push_back(std::move(probs));
    }
  }
  return out;
}

std::array<std::shared_ptr<const TabularPolicy>, 2>
CfrPlusSolver::AveragePolicy() const {
  const std::array<DenseStrategy, 2> avg = AverageStrategy();
  std::array<std::shared_ptr<const TabularPolicy>, 2> out;
  for (Player p = 0; p < 2; ++p) {
    TabularPolicy::Table table;
    const auto& infos = tree_->infostates(p);
    for (size_t s = 0; s < infos.size(); ++s) {
      // Renormalize so the stored vector passes the 1e-9 validity check.
      std::vector<double> probs = avg[p][s];
      double sum = 0;
      for (double x : probs) sum += x;
      for (double& x : probs) x /= sum;
      table.emplace(infos[s].key.observation, std::move(probs));
    }
    out[p] = std::make_shared<TabularPolicy>(tree_->game().id(), p,
                                             std::move(table));
  }
  return out;
}

}  // namespace abr
