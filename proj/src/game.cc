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

#include "abr/game.h"

#include <algorithm>

#include "games/connect_four.h"
#include "games/kuhn_poker.h"
#include "games/leduc_poker.h"
#include "games/liars_dice.h"
#include "games/tic_tac_toe.h"

namespace abr {

namespace {

void CheckPlayer(Player player) {
  ABR_REQUIRE(player == 0 || player == 1,
              "information state requested for non-player " +
                  std::to_string(player));
}

}  // namespace

GameId GameIdFromString(std::string_view id) {
  for (GameId g : AllGameIds()) {
    if (GameIdToString(g) == id) return g;
  }
  throw ConfigError("unknown game id '" + std::string(id) +
                    "' (expected one of kuhn_poker, leduc_poker, liars_dice, "
                    "tic_tac_toe, connect_four)");
}

std::string GameIdToString(GameId id) {
  switch (id) {
    case GameId::kKuhnPoker: return "kuhn_poker";
    case GameId::kLeducPoker: return "leduc_poker";
    case GameId::kLiarsDice: return "liars_dice";
    case GameId::kTicTacToe: return "tic_tac_toe";
    case GameId::kConnectFour: return "connect_four";
  }
  return "unknown";
}

std::vector<GameId> AllGameIds() {
  return {GameId::kKuhnPoker, GameId::kLeducPoker, GameId::kLiarsDice,
          GameId::kTicTacToe, GameId::kConnectFour};
}

bool IsTokenPrefix(std::string_view prefix, std::string_view key) {
  if (prefix.size() > key.size()) return false;
  if (key.compare(0, prefix.size(), prefix) != 0) return false;
  return prefix.size() == key.size() || key[prefix.size()] == ' ';
}

std::vector<Action> State::LegalActions() const {
  ABR_REQUIRE(!IsTerminal(), "LegalActions called on a terminal history");
  return DoLegalActions();
}

ActionsAndProbs State::ChanceOutcomes() const {
  ABR_REQUIRE(IsChanceNode(), "ChanceOutcomes called on a non-chance node");
  return DoChanceOutcomes();
}

std::array<double, 2> State::Returns() const {
  ABR_REQUIRE(IsTerminal(), "Returns called on a non-terminal history");
  return DoReturns();
}

void State::ApplyAction(Action action) {
  ABR_REQUIRE(!IsTerminal(), "ApplyAction called on a terminal history");
  const std::vector<Action> legal = DoLegalActions();
  ABR_REQUIRE(std::binary_search(legal.begin(), legal.end(), action),
              "illegal action " + std::to_string(action) + " at " +
                  ToString());
  const Player player = CurrentPlayer();
  DoApplyAction(action);
  history_.push_back({player, action});
}

std::unique_ptr<State> State::Child(Action action) const {
  std::unique_ptr<State> child = Clone();
  child->ApplyAction(action);
  return child;
}

InfoStateKey State::Key(Player player) const {
  return {player, InformationStateString(player)};
}

std::string State::InformationStateString(Player player) const {
  CheckPlayer(player);
  return DoInformationStateString(player);
}

std::vector<double> State::InformationStateTensor(Player player) const {
  std::vector<double> out(game_->InformationStateTensorSize(), 0.0);
  InformationStateTensor(player, out);
  return out;
}

void State::InformationStateTensor(Player player, std::span<double> out) const {
  CheckPlayer(player);
  ABR_REQUIRE(static_cast<int>(out.size()) == game_->InformationStateTensorSize(),
              "tensor buffer has the wrong size");
  std::fill(out.begin(), out.end(), 0.0);
  DoInformationStateTensor(player, out);
}

std::string Game::ActionToString(Player player, Action action) const {
  return (player == kChancePlayerId ? "chance:" : "") + std::to_string(action);
}

std::shared_ptr<const Game> LoadGame(std::string_view id) {
  return LoadGame(GameIdFromString(id));
}

std::shared_ptr<const Game> LoadGame(GameId id) {
  switch (id) {
    case GameId::kKuhnPoker: return std::make_shared<KuhnPokerGame>();
    case GameId::kLeducPoker: return std::make_shared<LeducPokerGame>();
    case GameId::kLiarsDice: return std::make_shared<LiarsDiceGame>();
    case GameId::kTicTacToe: return std::make_shared<TicTacToeGame>();
    case GameId::kConnectFour: return std::make_shared<ConnectFourGame>();
  }
  throw ConfigError("unknown game id");
}

std::unique_ptr<State> StateFromHistory(
    const Game& game, const std::vector<PlayerAction>& history) {
  std::unique_ptr<State> state = game.NewInitialState();
  for (const PlayerAction& pa : history) {
    ABR_REQUIRE(state->CurrentPlayer() == pa.player,
                "history does not match the game's player order");
    state->ApplyAction(pa.action);
  }
  return state;
}

}  // namespace abr
