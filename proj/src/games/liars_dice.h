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

#ifndef ABR_GAMES_LIARS_DICE_H_
#define ABR_GAMES_LIARS_DICE_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "abr/game.h"

namespace abr {

// Liar's Dice with one six-sided die per player. Bids are (quantity, face)
// pairs ranked quantity-major; the highest face is wild. Calling "liar" ends
// the game: the bidder wins (+1) iff at least quantity dice show the face
// or the wild face.
class LiarsDiceState : public State {
 public:
  static constexpr int kNumFaces = 6;
  static constexpr int kNumBids = 2 * kNumFaces;
  static constexpr Action kLiar = kNumBids;

  explicit LiarsDiceState(std::shared_ptr<const Game> game);

  Player CurrentPlayer() const override;
  std::unique_ptr<State> Clone() const override;
  std::string ToString() const override;

  static int BidQuantity(Action bid) { return bid / kNumFaces + 1; }
  static int BidFace(Action bid) { return bid % kNumFaces + 1; }

 protected:
  std::vector<Action> DoLegalActions() const override;
  ActionsAndProbs DoChanceOutcomes() const override;
  std::array<double, 2> DoReturns() const override;
  void DoApplyAction(Action action) override;
  std::string DoInformationStateString(Player player) const override;
  void DoInformationStateTensor(Player player,
                                std::span<double> out) const override;

 private:
  std::array<int, 2> dice_ = {0, 0};  // Faces 1..6, 0 = not rolled.
  std::vector<Action> bids_;
  bool called_ = false;
};

class LiarsDiceGame : public Game {
 public:
  LiarsDiceGame();
  std::unique_ptr<State> NewInitialState() const override;
  int NumDistinctActions() const override { return LiarsDiceState::kNumBids + 1; }
  // player(2) + own face(6) + 12 bids x who made them(2).
  int InformationStateTensorSize() const override { return 32; }
  std::string ActionToString(Player player, Action action) const override;
};

}  // namespace abr

#endif  // ABR_GAMES_LIARS_DICE_H_
