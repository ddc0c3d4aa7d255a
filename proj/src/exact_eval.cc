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


#include "abr/exact_eval.h"

#include <cmath>
#include <limits>

namespace abr {

DenseStrategy Densify(const GameTree& tree, Player player,
                      const Policy& policy) {
  DenseStrategy dense;
  dense.reserve(tree.infostates(player).size());
  for (const InfoStateInfo& info : tree.infostates(player)) {
    dense.push_back(policy.ActionProbabilities(info.key, info.legal));
  }
  return dense;
}

namespace {

double EvaluateNode(const GameTree& tree, const DenseStrategy* pis[2], int n) {
  const GameTree::Node& node = tree.node(n);
  if (node.player == kTerminalPlayerId) return node.return0;
  double value = 0;
  for (int i = 0; i < node.num_children; ++i) {
    const double p = node.player == kChancePlayerId
                         ? tree.chance_prob(node, i)
                         : (*pis[node.player])[node.infostate][i];
    if (p == 0) continue;
    value += p * EvaluateNode(tree, pis, tree.child(node, i));
  }
  return value;
}

double LazyPolicyValue(const GameTree& tree, const Policy* pis[2], int n) {
  const GameTree::Node& node = tree.node(n);
  if (node.player == kTerminalPlayerId) return node.return0;
  std::vector<double> probs;
  if (node.player != kChancePlayerId) {
    const InfoStateInfo& info = tree.infostates(node.player)[node.infostate];
    probs = pis[node.player]->ActionProbabilities(info.key, info.legal);
  }
  double value = 0;
  for (int i = 0; i < node.num_children; ++i) {
    const double p = node.player == kChancePlayerId ? tree.chance_prob(node, i)
                                                    : probs[i];
    if (p == 0) continue;
    value += p * LazyPolicyValue(tree, pis, tree.child(node, i));
  }
  return value;
}

class BestResponder {
 public:
  BestResponder(const GameTree& tree, const DenseStrategy& opponent,
                Player responder)
      : tree_(tree),
        opponent_(opponent),
        responder_(responder),
        reach_(tree.num_nodes(), 0.0),
        value_(tree.num_nodes(), std::numeric_limits<double>::quiet_NaN()),
        members_(tree.infostates(responder).size()),
        best_(tree.infostates(responder).size(), -1) {
    ForwardReach(0, 1.0);
  }

  double Value(int n) {
    double& memo = value_[n];
    if (!std::isnan(memo)) return memo;
    const GameTree::Node& node = tree_.node(n);
    double v = 0;
    if (node.player == kTerminalPlayerId) {
      v = tree_.Return(node, responder_);
    } else if (node.player == responder_) {
      v = Value(tree_.child(node, BestAction(node.infostate)));
    } else {
      for (int i = 0; i < node.num_children; ++i) {
        const double p = node.player == kChancePlayerId
                             ? tree_.chance_prob(node, i)
                             : opponent_[node.infostate][i];
        if (p == 0) continue;
        v += p * Value(tree_.child(node, i));
      }
    }
    memo = v;
    return v;
  }

  // Argmax over actions of the reach-weighted counterfactual value.
  int BestAction(int infostate) {
    int& best = best_[infostate];
    if (best >= 0) return best;
    const int num_actions =
        static_cast<int>(tree_.infostates(responder_)[infostate].legal.size());
    std::vector<double> cfv(num_actions, 0.0);
    for (int h : members_[infostate]) {
      if (reach_[h] == 0) continue;
      const GameTree::Node& node = tree_.node(h);
      for (int a = 0; a < num_actions; ++a) {
        cfv[a] += reach_[h] * Value(tree_.child(node, a));
      }
    }
    best = 0;
    for (int a = 1; a < num_actions; ++a) {
      if (cfv[a] > cfv[best]) best = a;
    }
    return best;
  }

 private:
  void ForwardReach(int n, double reach) {
    reach_[n] = reach;
    const GameTree::Node& node = tree_.node(n);
    if (node.player == kTerminalPlayerId) return;
    if (node.player == responder_) members_[node.infostate].push_back(n);
    for (int i = 0; i < node.num_children; ++i) {
      double p = 1.0;
      if (node.player == kChancePlayerId) {
        p = tree_.chance_prob(node, i);
      } else if (node.player != responder_) {
        p = opponent_[node.infostate][i];
      }
      ForwardReach(tree_.child(node, i), reach * p);
    }
  }

  const GameTree& tree_;
  const DenseStrategy& opponent_;
  Player responder_;
  std::vector<double> reach_;
  std::vector<double> value_;
  std::vector<std::vector<int>> members_;
  std::vector<int> best_;
};

}  // namespace

std::array<double, 2> ExpectedValue(const GameTree& tree,
                                    const DenseStrategy& pi0,
                                    const DenseStrategy& pi1) {
  const DenseStrategy* pis[2] = {&pi0, &pi1};
  const double v0 = EvaluateNode(tree, pis, 0);
  return {v0, -v0};
}

std::array<double, 2> ExpectedValue(const GameTree& tree, const Policy& pi0,
                                    const Policy& pi1) {
  const Policy* pis[2] = {&pi0, &pi1};
  const double v0 = LazyPolicyValue(tree, pis, 0);
  return {v0, -v0};
}

BestResponseResult BestResponse(const GameTree& tree,
                                const DenseStrategy& opponent,
                                Player responder) {
  ABR_REQUIRE(responder == 0 || responder == 1, "responder must be 0 or 1");
  BestResponder br(tree, opponent, responder);
  BestResponseResult result;
  result.responder = responder;
  result.br_value = br.Value(0);
  auto policy = std::make_shared<TabularPolicy>(tree.game().id(), responder);
  const auto& infos = tree.infostates(responder);
  result.br_action_index.resize(infos.size());
  for (size_t s = 0; s < infos.size(); ++s) {
    const int a = br.BestAction(static_cast<int>(s));
    result.br_action_index[s] = a;
    std::vector<double> probs(infos[s].legal.size(), 0.0);
    probs[a] = 1.0;
    policy->Set(infos[s].key.observation, std::move(probs));
  }
  result.br_policy = std::move(policy);
  return result;
}

BestResponseResult BestResponse(const GameTree& tree, const Policy& opponent,
                                Player responder) {
  return BestResponse(tree, Densify(tree, 1 - responder, opponent), responder);
}

ExploitabilityReport NashConv(const GameTree& tree, const DenseStrategy& pi0,
                              const DenseStrategy& pi1) {
  ExploitabilityReport report;
  report.per_player_br_values[0] = BestResponse(tree, pi1, 0).br_value;
  report.per_player_br_values[1] = BestResponse(tree, pi0, 1).br_value;
  report.nashconv = report.per_player_br_values[0] + report.per_player_br_values[1];
  report.exploitability = report.nashconv / kNumPlayers;
  return report;
}

ExploitabilityReport NashConv(const GameTree& tree, const Policy& pi0,
                              const Policy& pi1,
                              std::optional<double> game_value) {
  ExploitabilityReport report =
      NashConv(tree, Densify(tree, 0, pi0), Densify(tree, 1, pi1));
  report.game_value_estimate = game_value;
  return report;
}

}  // namespace abr
