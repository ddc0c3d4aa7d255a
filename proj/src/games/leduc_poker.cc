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

#include "games/leduc_poker.h"

namespace abr {

namespace {
constexpr int kMaxRaises = 2;
constexpr int kRaiseAmount[2] = {2, 4};
}  // namespace

LeducPokerGame::LeducPokerGame()
    : Game(GameSpec{GameId::kLeducPoker, kNumPlayers, 13.0, -13.0,
                    /*max_game_length=*/11, false}) {}

std::unique_ptr<State> LeducPokerGame::NewInitialState() const {
  return std::make_unique<LeducPokerState>(shared_from_this());
}

std::string LeducPokerGame::CardName(int card) {
  return std::string(1, "JQK"[card / 2]) + "sh"[card % 2];
}

std::string LeducPokerGame::ActionToString(Player player, Action action) const {
  if (player == kChancePlayerId) return CardName(action);
  switch (action) {
    case LeducPokerState::kFold: return "fold";
    case LeducPokerState::kCall: return "call";
    default: return "raise";
  }
}

LeducPokerState::LeducPokerState(std::shared_ptr<const Game> game)
    : State(std::move(game)) {}

Player LeducPokerState::CurrentPlayer() const {
  return finished_ ? kTerminalPlayerId : cur_player_;
}

bool LeducPokerState::CardAvailable(int card) const {
  return card != private_cards_[0] && card != private_cards_[1] &&
         card != public_card_;
}

std::vector<Action> LeducPokerState::DoLegalActions() const {
  std::vector<Action> actions;
  if (IsChanceNode()) {
    for (int c = 0; c < LeducPokerGame::kNumCards; ++c) {
      if (CardAvailable(c)) actions.push_back(c);
    }
    return actions;
  }
  if (stakes_ > contribution_[cur_player_]) actions.push_back(kFold);
  actions.push_back(kCall);
  if (num_raises_ < kMaxRaises) actions.push_back(kRaise);
  return actions;
}

ActionsAndProbs LeducPokerState::DoChanceOutcomes() const {
  ActionsAndProbs outcomes;
  const std::vector<Action> cards = DoLegalActions();
  const double p = 1.0 / static_cast<double>(cards.size());
  for (Action c : cards) outcomes.push_back({c, p});
  return outcomes;
}

bool LeducPokerState::RoundComplete() const {
  return (num_raises_ == 0 && num_calls_ == 2) ||
         (num_raises_ > 0 && num_calls_ == 1);
}

void LeducPokerState::DoApplyAction(Action action) {
  if (IsChanceNode()) {
    if (private_cards_[0] < 0) {
      private_cards_[0] = action;
    } else if (private_cards_[1] < 0) {
      private_cards_[1] = action;
      cur_player_ = 0;
    } else {
      public_card_ = action;
      cur_player_ = 0;
    }
    return;
  }
  sequences_[round_].push_back(action);
  switch (action) {
    case kFold:
      folded_ = cur_player_;
      finished_ = true;
      return;
    case kCall:
      contribution_[cur_player_] = stakes_;
      ++num_calls_;
      break;
    case kRaise:
      stakes_ += kRaiseAmount[round_];
      contribution_[cur_player_] = stakes_;
      ++num_raises_;
      num_calls_ = 0;
      break;
  }
  if (RoundComplete()) {
    if (round_ == 1) {
      finished_ = true;
    } else {
      round_ = 1;
      num_raises_ = 0;
      num_calls_ = 0;
      cur_player_ = kChancePlayerId;
    }
  } else {
    cur_player_ = 1 - cur_player_;
  }
}

int LeducPokerState::HandRank(Player player) const {
  const int own = private_cards_[player] / 2;
  const int board = public_card_ / 2;
  return own == board ? 100 + own : own;
}

std::array<double, 2> LeducPokerState::DoReturns() const {
  if (folded_ >= 0) {
    const Player winner = 1 - folded_;
    std::array<double, 2> r;
    r[winner] = contribution_[folded_];
    r[folded_] = -contribution_[folded_];
    return r;
  }
  const int r0 = HandRank(0), r1 = HandRank(1);
  if (r0 == r1) return {0.0, 0.0};
  // Both players contributed the same amount at showdown.
  const double pot_share = contribution_[0];
  return r0 > r1 ? std::array<double, 2>{pot_share, -pot_share}
                 : std::array<double, 2>{-pot_share, pot_share};
}

std::string LeducPokerState::DoInformationStateString(Player player) const {
  std::string s = player == 0 ? "p0" : "p1";
  if (private_cards_[player] >= 0) {
    s += ' ';
    s += LeducPokerGame::CardName(private_cards_[player]);
  }
  for (int round = 0; round < 2; ++round) {
    if (round == 1) {
      if (public_card_ < 0) break;
      s += " b";
      s += LeducPokerGame::CardName(public_card_);
    }
    for (Action a : sequences_[round]) {
      s += ' ';
      s += "fcr"[a];
    }
  }
  return s;
}

void LeducPokerState::DoInformationStateTensor(Player player,
                                               std::span<double> out) const {
  out[player] = 1;
  if (private_cards_[player] >= 0) out[2 + private_cards_[player]] = 1;
  if (public_card_ >= 0) out[8 + public_card_] = 1;
  for (int round = 0; round < 2; ++round) {
    const auto& seq = sequences_[round];
    for (size_t i = 0; i < seq.size(); ++i) {
      const int base = 14 + round * 8 + static_cast<int>(i) * 2;
      if (seq[i] == kCall) out[base] = 1;
      if (seq[i] == kRaise) out[base + 1] = 1;
    }
  }
}

std::unique_ptr<State> LeducPokerState::Clone() const {
  return std::make_unique<LeducPokerState>(*this);
}

std::string LeducPokerState::ToString() const {
  std::string s = "leduc[";
  for (int p = 0; p < 2; ++p) {
    s += private_cards_[p] >= 0 ? LeducPokerGame::CardName(private_cards_[p])
                                : "??";
    s += p == 0 ? " " : "";
  }
  s += "|";
  for (Action a : sequences_[0]) s += "fcr"[a];
  s += "|";
  s += public_card_ >= 0 ? LeducPokerGame::CardName(public_card_) : "";
  s += "|";
  for (Action a : sequences_[1]) s += "fcr"[a];
  return s + "]";
}

}  // namespace abr
