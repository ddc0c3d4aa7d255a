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

#include "games/kuhn_poker.h"

namespace abr {

namespace {
constexpr char kCardNames[] = "JQK";
}  // namespace

KuhnPokerGame::KuhnPokerGame()
    : Game(GameSpec{GameId::kKuhnPoker, kNumPlayers, 2.0, -2.0,
                    /*max_game_length=*/5, false}) {}

std::unique_ptr<State> KuhnPokerGame::NewInitialState() const {
  return std::make_unique<KuhnPokerState>(shared_from_this());
}

std::string KuhnPokerGame::ActionToString(Player player, Action action) const {
  if (player == kChancePlayerId) return std::string(1, kCardNames[action]);
  return action == KuhnPokerState::kPass ? "pass" : "bet";
}

KuhnPokerState::KuhnPokerState(std::shared_ptr<const Game> game)
    : State(std::move(game)) {}

int KuhnPokerState::NumDealt() const {
  return (cards_[0] >= 0) + (cards_[1] >= 0);
}

Player KuhnPokerState::CurrentPlayer() const {
  if (NumDealt() < 2) return kChancePlayerId;
  const int n = static_cast<int>(bets_.size());
  if (n == 2 && !(bets_[0] == kPass && bets_[1] == kBet)) {
    return kTerminalPlayerId;
  }
  if (n == 3) return kTerminalPlayerId;
  return n % 2;
}

std::vector<Action> KuhnPokerState::DoLegalActions() const {
  if (IsChanceNode()) {
    std::vector<Action> cards;
    for (int c = 0; c < 3; ++c) {
      if (c != cards_[0]) cards.push_back(c);
    }
    return cards;
  }
  return {kPass, kBet};
}

ActionsAndProbs KuhnPokerState::DoChanceOutcomes() const {
  ActionsAndProbs outcomes;
  const double p = 1.0 / (3 - NumDealt());
  for (Action c : DoLegalActions()) outcomes.push_back({c, p});
  return outcomes;
}

void KuhnPokerState::DoApplyAction(Action action) {
  if (IsChanceNode()) {
    cards_[NumDealt()] = action;
  } else {
    bets_.push_back(action);
  }
}

std::array<double, 2> KuhnPokerState::DoReturns() const {
  // Pot contributions beyond the ante.
  std::array<double, 2> put = {1.0, 1.0};
  for (size_t i = 0; i < bets_.size(); ++i) {
    if (bets_[i] == kBet) put[i % 2] += 1.0;
  }
  int winner;
  const bool folded = put[0] != put[1];
  if (folded) {
    winner = put[0] > put[1] ? 0 : 1;
  } else {
    winner = cards_[0] > cards_[1] ? 0 : 1;
  }
  const double won = put[1 - winner];
  std::array<double, 2> returns;
  returns[winner] = won;
  returns[1 - winner] = -won;
  return returns;
}

std::string KuhnPokerState::DoInformationStateString(Player player) const {
  std::string s = player == 0 ? "p0" : "p1";
  if (cards_[player] >= 0) {
    s += ' ';
    s += kCardNames[cards_[player]];
  }
  for (Action b : bets_) s += b == kPass ? " p" : " b";
  return s;
}

void KuhnPokerState::DoInformationStateTensor(Player player,
                                              std::span<double> out) const {
  out[player] = 1;
  if (cards_[player] >= 0) out[2 + cards_[player]] = 1;
  for (size_t i = 0; i < bets_.size(); ++i) out[5 + 2 * i + bets_[i]] = 1;
}

std::unique_ptr<State> KuhnPokerState::Clone() const {
  return std::make_unique<KuhnPokerState>(*this);
}

std::string KuhnPokerState::ToString() const {
  std::string s = "kuhn[";
  for (int p = 0; p < 2; ++p) s += cards_[p] >= 0 ? kCardNames[cards_[p]] : '?';
  s += "|";
  for (Action b : bets_) s += b == kPass ? 'p' : 'b';
  return s + "]";
}

}  // namespace abr
