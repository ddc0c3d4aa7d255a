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


#ifndef ABR_GAME_TREE_H_
#define ABR_GAME_TREE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "abr/game.h"

namespace abr {

// One information state of one player, as seen by the tree builder.
struct InfoStateInfo {
  InfoStateKey key;
  std::vector<Action> legal;
};

// Explicit, fully enumerated game tree for games small enough to traverse.
// Nodes are stored in depth-first pre-order and every node's children are
// contiguous in the child arrays.
class GameTree {
 public:
  struct Node {
    Player player;          // 0, 1, kChancePlayerId or kTerminalPlayerId.
    int infostate = -1;     // Index into infostates(player) at player nodes.
    int child_begin = 0;    // Index into the child arrays.
    int num_children = 0;
    double return0 = 0;     // Utility of player 0 at terminals.
  };

  // Throws ConfigError when the game has more than `max_nodes` nodes.
  static GameTree Build(std::shared_ptr<const Game> game,
                        std::int64_t max_nodes = 5'000'000);

  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> shared_game() const { return game_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int index) const { return nodes_[index]; }
  int child(const Node& n, int i) const { return child_node_[n.child_begin + i]; }
  Action child_action(const Node& n, int i) const {
    return child_action_[n.child_begin + i];
  }
  // Chance probability of the i-th child of a chance node.
  double chance_prob(const Node& n, int i) const {
    return child_prob_[n.child_begin + i];
  }
  double Return(const Node& n, Player p) const {
    return p == 0 ? n.return0 : -n.return0;
  }

  const std::vector<InfoStateInfo>& infostates(Player p) const {
    return infostates_[p];
  }
  // -1 if absent.
  int InfoStateIndex(Player p, const std::string& observation) const;

  // Rebuilds the ground state of a node by replaying its action path.
  std::unique_ptr<State> StateAt(int node_index) const;

 private:
  explicit GameTree(std::shared_ptr<const Game> game) : game_(std::move(game)) {}

  std::shared_ptr<const Game> game_;
  std::vector<Node> nodes_;
  std::vector<int> parent_;
  std::vector<int> child_node_;
  std::vector<Action> child_action_;
  std::vector<double> child_prob_;
  std::array<std::vector<InfoStateInfo>, 2> infostates_;
  std::array<std::unordered_map<std::string, int>, 2> infostate_index_;
};

// Memoized per-game tree; thread-safe. Trees are immutable once built.
std::shared_ptr<const GameTree> CachedGameTree(GameId id);

}  // namespace abr

#endif  // ABR_GAME_TREE_H_
