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

#ifndef ABR_GAMES_LEDUC_POKER_H_
#define ABR_GAMES_LEDUC_POKER_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "abr/game.h"

namespace abr {

// Two-player Leduc poker: six cards (J, Q, K in two suits), ante 1, two
// betting rounds with raise sizes 2 and 4, at most two raises per round.
// Player 0 opens both rounds. A pair with the board beats any unpaired hand;
// otherwise the higher rank wins and equal ranks split the pot.
class LeducPokerState : public State {
 public:
  enum Move : Action { kFold = 0, kCall = 1, kRaise = 2 };

  explicit LeducPokerState(std::shared_ptr<const Game> game);

  Player CurrentPlayer() const override;
  std::unique_ptr<State> Clone() const override;
  std::string ToString() const override;

  int private_card(Player p) const { return private_cards_[p]; }
  int public_card() const { return public_card_; }

 protected:
  std::vector<Action> DoLegalActions() const override;
  ActionsAndProbs DoChanceOutcomes() const override;
  std::array<double, 2> DoReturns() const override;
  void DoApplyAction(Action action) override;
  std::string DoInformationStateString(Player player) const override;
  void DoInformationStateTensor(Player player,
                                std::span<double> out) const override;

 private:
  bool CardAvailable(int card) const;
  bool RoundComplete() const;
  int HandRank(Player player) const;

  std::array<int, 2> private_cards_ = {-1, -1};
  int public_card_ = -1;
  int round_ = 0;  // 0 or 1.
  int stakes_ = 1;
  std::array<int, 2> contribution_ = {1, 1};
  int num_raises_ = 0;
  int num_calls_ = 0;
  Player cur_player_ = kChancePlayerId;
  Player folded_ = -1;
  bool finished_ = false;
  std::array<std::vector<Action>, 2> sequences_;
};

class LeducPokerGame : public Game {
 public:
  static constexpr int kNumCards = 6;
  static constexpr int kMaxActionsPerRound = 4;

  LeducPokerGame();
  std::unique_ptr<State> NewInitialState() const override;
  int NumDistinctActions() const override { return 3; }
  // player(2) + private card(6) + public card(6) + 2 rounds x 4 slots x
  // {call, raise}.
  int InformationStateTensorSize() const override { return 30; }
  std::string ActionToString(Player player, Action action) const override;

  static std::string CardName(int card);
};

}  // namespace abr

#endif  // ABR_GAMES_LEDUC_POKER_H_
