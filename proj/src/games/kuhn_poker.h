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

#ifndef ABR_GAMES_KUHN_POKER_H_
#define ABR_GAMES_KUHN_POKER_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "abr/game.h"

namespace abr {

// Three-card Kuhn poker: J < Q < K, ante 1, one bet of 1.
class KuhnPokerState : public State {
 public:
  enum Move : Action { kPass = 0, kBet = 1 };

  explicit KuhnPokerState(std::shared_ptr<const Game> game);

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
  int NumDealt() const;

  std::array<int, 2> cards_ = {-1, -1};
  std::vector<Action> bets_;
};

class KuhnPokerGame : public Game {
 public:
  KuhnPokerGame();
  std::unique_ptr<State> NewInitialState() const override;
  int NumDistinctActions() const override { return 2; }
  // player(2) + private card(3) + betting sequence(3 x {pass, bet}).
  int InformationStateTensorSize() const override { return 11; }
  std::string ActionToString(Player player, Action action) const override;
};

}  // namespace abr

#endif  // ABR_GAMES_KUHN_POKER_H_
