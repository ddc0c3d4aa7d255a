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


#include "abr/game_tree.h"

#include <map>
#include <mutex>

namespace abr {


GameTree GameTree::Build(std::shared_ptr<const Game> game,
                         std::int64_t max_nodes) {
  GameTree tree(game);
  struct Frame {
    std::unique_ptr<State> state;
    int slot;  // Child-array slot to fill with this node's index, or -1.
    int parent;
  };
  std::vector<Frame> stack;
  stack.push_back({game->NewInitialState(), -1, -1});
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (static_cast<std::int64_t>(tree.nodes_.size()) >= max_nodes) {
      throw ConfigError("game " + game->name() +
                        " is too large to enumerate exactly");
    }
    const int index = static_cast<int>(tree.nodes_.size());
    if (frame.slot >= 0) tree.child_node_[frame.slot] = index;
    tree.parent_.push_back(frame.parent);
    const State& s = *frame.state;
    Node n;
    n.player = s.CurrentPlayer();
    if (s.IsTerminal()) {
      n.return0 = s.Returns()[0];
      tree.nodes_.push_back(n);
      continue;
    }
    std::vector<Action> actions;
    std::vector<double> probs;
    if (s.IsChanceNode()) {
      for (const auto& [a, p] : s.ChanceOutcomes()) {
        actions.push_back(a);
        probs.push_back(p);
      }
    } else {
      actions = s.LegalActions();
      probs.assign(actions.size(), 0.0);
      InfoStateKey key = s.Key(n.player);
      auto& index_map = tree.infostate_index_[n.player];
      auto it = index_map.find(key.observation);
      if (it == index_map.end()) {
        const int id = static_cast<int>(tree.infostates_[n.player].size());
        index_map.emplace(key.observation, id);
        tree.infostates_[n.player].push_back({std::move(key), actions});
        n.infostate = id;
      } else {
        n.infostate = it->second;
      }
    }
    n.child_begin = static_cast<int>(tree.child_node_.size());
    n.num_children = static_cast<int>(actions.size());
    for (size_t i = 0; i < actions.size(); ++i) {
      tree.child_node_.push_back(-1);
      tree.child_action_.push_back(actions[i]);
      tree.child_prob_.push_back(probs[i]);
    }
    tree.nodes_.push_back(n);
    // Push in reverse so children are visited in action order.
    for (int i = static_cast<int>(actions.size()) - 1; i >= 0; --i) {
      stack.push_back({s.Child(actions[i]), n.child_begin + i, index});
    }
  }
  return tree;
}

int GameTree::InfoStateIndex(Player p, const std::string& observation) const {
  auto it = infostate_index_[p].find(observation);
  return it == infostate_index_[p].end() ? -1 : it->second;
}

std::unique_ptr<State> GameTree::StateAt(int node_index) const {
  std::vector<Action> path;
  for (int n = node_index; parent_[n] >= 0; n = parent_[n]) {
    const Node& parent = nodes_[parent_[n]];
    for (int i = 0; i < parent.num_children; ++i) {
      if (child(parent, i) == n) {
        path.push_back(child_action(parent, i));
        break;
      }
    }
  }
  std::unique_ptr<State> state = game_->NewInitialState();
  for (auto it = path.rbegin(); it != path.rend(); ++it) state->ApplyAction(*it);
  return state;
}

std::shared_ptr<const GameTree> CachedGameTree(GameId id) {
  static std::mutex mu;
  static std::map<GameId, std::shared_ptr<const GameTree>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  auto tree = std::make_shared<const GameTree>(GameTree::Build(LoadGame(id)));
  cache.emplace(id, tree);
  return tree;
}

}  // namespace abr
