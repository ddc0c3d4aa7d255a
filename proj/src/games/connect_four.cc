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


#include "games/connect_four.h"

namespace abr {

ConnectFourGame::ConnectFourGame()
    : Game(GameSpec{GameId::kConnectFour, kNumPlayers, 1.0, -1.0,
                    /*max_game_length=*/42, true}) {}

std::unique_ptr<State> ConnectFourGame::NewInitialState() const {
  return std::make_unique<ConnectFourState>(shared_from_this());
}

ConnectFourState::ConnectFourState(std::shared_ptr<const Game> game)
    : State(std::move(game)) {
  board_.fill(-1);
}

Player ConnectFourState::CurrentPlayer() const {
  if (winner_ >= 0 || num_moves_ == kRows * kCols) return kTerminalPlayerId;
  return num_moves_ % 2;
}

std::vector<Action> ConnectFourState::DoLegalActions() const {
  std::vector<Action> actions;
  for (int c = 0; c < kCols; ++c) {
    if (heights_[c] < kRows) actions.push_back(c);
  }
  return actions;
}

ActionsAndProbs ConnectFourState::DoChanceOutcomes() const { return {}; }

bool ConnectFourState::WinsThrough(int row, int col) const {
  const int p = board_[row * kCols + col];
  constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (const auto& d : kDirs) {
    int count = 1;
    for (int sign : {1, -1}) {
      int r = row + sign * d[0], c = col + sign * d[1];
      while (r >= 0 && r < kRows && c >= 0 && c < kCols &&
             board_[r * kCols + c] == p) {
        ++count;
        r += sign * d[0];
        c += sign * d[1];
      }
    }
    if (count >= 4) return true;
  }
  return false;
}

void ConnectFourState::DoApplyAction(Action action) {
  const Player p = CurrentPlayer();
  const int row = heights_[action]++;
  board_[row * kCols + action] = p;
  ++num_moves_;
  if (WinsThrough(row, action)) winner_ = p;
}

std::array<double, 2> ConnectFourState::DoReturns() const {
  if (winner_ < 0) return {0.0, 0.0};
  return winner_ == 0 ? std::array<double, 2>{1.0, -1.0}
                      : std::array<double, 2>{-1.0, 1.0};
}

std::string ConnectFourState::DoInformationStateString(Player player) const {
  std::string s = player == 0 ? "p0" : "p1";
  for (const PlayerAction& pa : history_) {
    s += ' ';
    s += static_cast<char>('0' + pa.action);
  }
  return s;
}

void ConnectFourState::DoInformationStateTensor(Player player,
                                                std::span<double> out) const {
  out[player] = 1;
  for (int i = 0; i < kRows * kCols; ++i) {
    out[2 + (board_[i] + 1) * kRows * kCols + i] = 1;
  }
}

std::unique_ptr<State> ConnectFourState::Clone() const {
  return std::make_unique<ConnectFourState>(*this);
}

std::string ConnectFourState::ToString() const {
  std::string s;
  for (int r = kRows - 1; r >= 0; --r) {
    for (int c = 0; c < kCols; ++c) {
      const int v = board_[r * kCols + c];
      s += v < 0 ? '.' : (v == 0 ? 'x' : 'o');
    }
    if (r > 0) s += '/';
  }
  return s;
}

}  // namespace abr
