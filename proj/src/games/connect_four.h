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


#ifndef ABR_GAMES_CONNECT_FOUR_H_
#define ABR_GAMES_CONNECT_FOUR_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "abr/game.h"

namespace abr {

// Connect Four on a 6x7 board; actions are column indices 0..6.
class ConnectFourState : public State {
 public:
  static constexpr int kRows = 6;
  static constexpr int kCols = 7;

  explicit ConnectFourState(std::shared_ptr<const Game> game);

  Player CurrentPlayer() const override;
  std::unique_ptr<State> Clone() const override;
  std::string ToString() const override;

 protected:
  std::vector<Action> DoLegalActions() const override;
  ActionsAndProbs DoChanceOutcomes() const override;
  std::array<double, 2> DoReturns() const override;
  void DoApplyAction(Action action) override;
  std::string DoInformationStateString(Player player) const override;
  void DoInformationStateTensor(Player player,
                                std::span<double> out) const override;

 private:
  bool WinsThrough(int row, int col) const;

  // board_[row * kCols + col], row 0 at the bottom; -1 empty.
  std::array<int, kRows * kCols> board_;
  std::array<int, kCols> heights_{};
  Player winner_ = -1;
  int num_moves_ = 0;
};

class ConnectFourGame : public Game {
 public:
  ConnectFourGame();
  std::unique_ptr<State> NewInitialState() const override;
  int NumDistinctActions() const override { return ConnectFourState::kCols; }
  // player(2) + {empty, player 0, player 1} x 42 cells.
  int InformationStateTensorSize() const override { return 2 + 3 * 42; }
};

}  // namespace abr

#endif  // ABR_GAMES_CONNECT_FOUR_H_
