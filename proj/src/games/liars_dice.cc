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

#include "games/liars_dice.h"

namespace abr {

namespace {

std::string BidToken(Action action) {
  if (action == LiarsDiceState::kLiar) return "L";
  return std::to_string(LiarsDiceState::BidQuantity(action)) + "x" +
         std::to_string(LiarsDiceState::BidFace(action));
}

}  // namespace

LiarsDiceGame::LiarsDiceGame()
    : Game(GameSpec{GameId::kLiarsDice, kNumPlayers, 1.0, -1.0,
                    /*max_game_length=*/2 + LiarsDiceState::kNumBids + 1,
                    false}) {}

std::unique_ptr<State> LiarsDiceGame::NewInitialState() const {
  return std::make_unique<LiarsDiceState>(shared_from_this());
}

std::string LiarsDiceGame::ActionToString(Player player, Action action) const {
  if (player == kChancePlayerId) return "roll" + std::to_string(action + 1);
  return action == LiarsDiceState::kLiar ? "liar" : "bid" + BidToken(action);
}

LiarsDiceState::LiarsDiceState(std::shared_ptr<const Game> game)
    : State(std::move(game)) {}

Player LiarsDiceState::CurrentPlayer() const {
  if (dice_[1] == 0) return kChancePlayerId;
  if (called_) return kTerminalPlayerId;
  return static_cast<int>(bids_.size()) % 2;
}

std::vector<Action> LiarsDiceState::DoLegalActions() const {
  std::vector<Action> actions;
  if (IsChanceNode()) {
    for (int f = 0; f < kNumFaces; ++f) actions.push_back(f);
    return actions;
  }
  const int first = bids_.empty() ? 0 : bids_.back() + 1;
  for (int b = first; b < kNumBids; ++b) actions.push_back(b);
  if (!bids_.empty()) actions.push_back(kLiar);
  return actions;
}

ActionsAndProbs LiarsDiceState::DoChanceOutcomes() const {
  ActionsAndProbs outcomes;
  for (int f = 0; f < kNumFaces; ++f) outcomes.push_back({f, 1.0 / kNumFaces});
  return outcomes;
}

void LiarsDiceState::DoApplyAction(Action action) {
  if (IsChanceNode()) {
    dice_[dice_[0] == 0 ? 0 : 1] = action + 1;
  } else if (action == kLiar) {
    called_ = true;
  } else {
    bids_.push_back(action);
  }
}

std::array<double, 2> LiarsDiceState::DoReturns() const {
  const Action bid = bids_.back();
  const int face = BidFace(bid);
  int matches = 0;
  for (int d : dice_) matches += (d == face || d == kNumFaces);
  const Player bidder = static_cast<int>(bids_.size() - 1) % 2;
  const Player winner = matches >= BidQuantity(bid) ? bidder : 1 - bidder;
  std::array<double, 2> r;
  r[winner] = 1.0;
  r[1 - winner] = -1.0;
  return r;
}

std::string LiarsDiceState::DoInformationStateString(Player player) const {
  std::string s = player == 0 ? "p0" : "p1";
  if (dice_[player] != 0) s += " d" + std::to_string(dice_[player]);
  for (Action b : bids_) s += " " + BidToken(b);
  return s;
}

void LiarsDiceState::DoInformationStateTensor(Player player,
                                              std::span<double> out) const {
  out[player] = 1;
  if (dice_[player] != 0) out[2 + dice_[player] - 1] = 1;
  for (size_t i = 0; i < bids_.size(); ++i) {
    out[8 + 2 * bids_[i] + static_cast<int>(i % 2)] = 1;
  }
}

std::unique_ptr<State> LiarsDiceState::Clone() const {
  return std::make_unique<LiarsDiceState>(*this);
}

std::string LiarsDiceState::ToString() const {
  std::string s = "liars_dice[" + std::to_string(dice_[0]) +
                  std::to_string(dice_[1]) + "|";
  for (Action b : bids_) s += BidToken(b) + " ";
  if (called_) s += "L";
  return s + "]";
}

}  // namespace abr
