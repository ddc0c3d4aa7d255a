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


#ifndef ABR_GAMES_TIC_TAC_TOE_H_
#define ABR_GAMES_TIC_TAC_TOE_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "abr/game.h"

namespace abr {

// 3x3 noughts and crosses; player 0 plays x and moves first. Actions are
// cell indices 0..8 in row-major order.
class TicTacToeState : public State {
 public:
  explicit TicTacToeState(std::shared_ptr<const Game> game);

  Player CurrentPlayer() const override;
  std::unique_ptr<State> Clone() const override;
  std::string ToString() const override;

  // -1 empty, else the owning player.
  int cell(int index) const { return board_[index]; }

 protected:
  std::vector<Action> DoLegalActions() const override;
  ActionsAndProbs DoChanceOutcomes() const override;
  std::array<double, 2> DoReturns() const override;
  void DoApplyAction(Action action) override;
  std::string DoInformationStateString(Player player) const override;
  void DoInformationStateTensor(Player player,
                                std::span<double> out) const override;

 private:
  std::array<int, 9> board_;
  Player winner_ = -1;
  int num_moves_ = 0;
};

class TicTacToeGame : public Game {
 public:
  TicTacToeGame();
  std::unique_ptr<State> NewInitialState() const override;
  int NumDistinctActions() const override { return 9; }
  // player(2) + {empty, x, o} x 9 cells.
  int InformationStateTensorSize() const override { return 29; }
};

}  // namespace abr

#endif  // ABR_GAMES_TIC_TAC_TOE_H_
