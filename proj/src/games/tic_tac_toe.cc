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


#include "games/tic_tac_toe.h"

namespace abr {

namespace {

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

}  // namespace

TicTacToeGame::TicTacToeGame()
    : Game(GameSpec{GameId::kTicTacToe, kNumPlayers, 1.0, -1.0,
                    /*max_game_length=*/9, true}) {}

std::unique_ptr<State> TicTacToeGame::NewInitialState() const {
  return std::make_unique<TicTacToeState>(shared_from_this());
}

TicTacToeState::TicTacToeState(std::shared_ptr<const Game> game)
    : State(std::move(game)) {
  board_.fill(-1);
}

Player TicTacToeState::CurrentPlayer() const {
  if (winner_ >= 0 || num_moves_ == 9) return kTerminalPlayerId;
  return num_moves_ % 2;
}

std::vector<Action> TicTacToeState::DoLegalActions() const {
  std::vector<Action> actions;
  for (int c = 0; c < 9; ++c) {
    if (board_[c] < 0) actions.push_back(c);
  }
  return actions;
}

ActionsAndProbs TicTacToeState::DoChanceOutcomes() const { return {}; }

void TicTacToeState::DoApplyAction(Action action) {
  const Player p = CurrentPlayer();
  board_[action] = p;
  ++num_moves_;
  for (const auto& line : kLines) {
    if (board_[line[0]] == p && board_[line[1]] == p && board_[line[2]] == p) {
      winner_ = p;
    }
  }
}

std::array<double, 2> TicTacToeState::DoReturns() const {
  if (winner_ < 0) return {0.0, 0.0};
  return winner_ == 0 ? std::array<double, 2>{1.0, -1.0}
                      : std::array<double, 2>{-1.0, 1.0};
}

std::string TicTacToeState::DoInformationStateString(Player player) const {
  std::string s = player == 0 ? "p0" : "p1";
  for (const PlayerAction& pa : history_) s += " " + std::to_string(pa.action);
  return s;
}

void TicTacToeState::DoInformationStateTensor(Player player,
                                              std::span<double> out) const {
  out[player] = 1;
  for (int c = 0; c < 9; ++c) out[2 + (board_[c] + 1) * 9 + c] = 1;
}

std::unique_ptr<State> TicTacToeState::Clone() const {
  return std::make_unique<TicTacToeState>(*this);
}

std::string TicTacToeState::ToString() const {
  std::string s;
  for (int c = 0; c < 9; ++c) {
    s += board_[c] < 0 ? '.' : (board_[c] == 0 ? 'x' : 'o');
    if (c % 3 == 2 && c != 8) s += '/';
  }
  return s;
}

}  // namespace abr
