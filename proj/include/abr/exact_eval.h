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


#ifndef ABR_EXACT_EVAL_H_
#define ABR_EXACT_EVAL_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abr/game_tree.h"
#include "abr/policy.h"

namespace abr {

// A policy evaluated at every information state of one seat:
// probs[infostate][i] is the probability of infostates(p)[infostate].legal[i].
using DenseStrategy = std::vector<std::vector<double>>;
DenseStrategy Densify(const GameTree& tree, Player player, const Policy& policy);

// Exact (v_0, v_1) of the joint policy. Zero-probability branches are pruned,
// so policies are only queried at reachable information states.
std::array<double, 2> ExpectedValue(const GameTree& tree, const Policy& pi0,
                                    const Policy& pi1);
std::array<double, 2> ExpectedValue(const GameTree& tree,
                                    const DenseStrategy& pi0,
                                    const DenseStrategy& pi1);

struct BestResponseResult {
  Player responder = 0;
  double br_value = 0;  // Responder's value against the fixed opponent.
  std::shared_ptr<const TabularPolicy> br_policy;  // Deterministic and total.
  std::vector<int> br_action_index;  // Per responder infostate.
  std::optional<double> delta;  // v*_i - v_i(pi_i, b(pi_i)), when v* is known.
};

// Exact best response by full traversal. Ties go to the lowest action id;
// information states with zero opponent-and-chance reach get the lowest id.
BestResponseResult BestResponse(const GameTree& tree, const Policy& opponent,
                                Player responder);
BestResponseResult BestResponse(const GameTree& tree,
                                const DenseStrategy& opponent,
                                Player responder);

struct ExploitabilityReport {
  std::array<double, 2> per_player_br_values = {0, 0};
  double nashconv = 0;
  double exploitability = 0;
  std::optional<double> game_value_estimate;  // v*_0, when supplied.
};

// nashconv = br_value(seat 0 vs pi1) + br_value(seat 1 vs pi0).
ExploitabilityReport NashConv(const GameTree& tree, const Policy& pi0,
                              const Policy& pi1,
                              std::optional<double> game_value = std::nullopt);
ExploitabilityReport NashConv(const GameTree& tree, const DenseStrategy& pi0,
                              const DenseStrategy& pi1);

}  // namespace abr

#endif  // ABR_EXACT_EVAL_H_
