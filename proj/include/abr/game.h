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

#ifndef ABR_GAME_H_
#define ABR_GAME_H_

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abr/core.h"

namespace abr {

enum class GameId { kKuhnPoker, kLeducPoker, kLiarsDice, kTicTacToe, kConnectFour };

GameId GameIdFromString(std::string_view id);  // Throws ConfigError.
std::string GameIdToString(GameId id);
std::vector<GameId> AllGameIds();

struct GameSpec {
  GameId game_id;
  int num_players = kNumPlayers;
  double max_utility = 0;
  double min_utility = 0;
  int max_game_length = 0;  // Plies, chance actions included.
  bool perfect_information = false;
};

// Identifies one information state of one player. The observation string is
// a space-separated token sequence that begins with the owning player
// ("p0"/"p1") and only ever grows by appending tokens as the game proceeds,
// so the key of an earlier information state of the same player is always a
// token-prefix of every later one.
struct InfoStateKey {
  Player player = 0;
  std::string observation;

  friend bool operator==(const InfoStateKey&, const InfoStateKey&) = default;
  friend auto operator<=>(const InfoStateKey&, const InfoStateKey&) = default;
};

// True if `prefix` equals `key` or is a whole-token prefix of it.
bool IsTokenPrefix(std::string_view prefix, std::string_view key);

struct PlayerAction {
  Player player;
  Action action;
  friend bool operator==(const PlayerAction&, const PlayerAction&) = default;
};

class Game;

// A ground state of the game. It is identified by its full action sequence
// from the root (chance actions included); replaying History() from a fresh
// initial state reproduces an identical State.
class State {
 public:
  explicit State(std::shared_ptr<const Game> game) : game_(std::move(game)) {}
  virtual ~State() = default;

  virtual Player CurrentPlayer() const = 0;
  bool IsTerminal() const { return CurrentPlayer() == kTerminalPlayerId; }
  bool IsChanceNode() const { return CurrentPlayer() == kChancePlayerId; }

  // Sorted by action id. Throws ContractViolation on terminal states.
  std::vector<Action> LegalActions() const;
  // Chance outcomes sorted by action; throws unless this is a chance node.
  ActionsAndProbs ChanceOutcomes() const;
  // (u_0, u_1); throws unless terminal.
  std::array<double, 2> Returns() const;

  // Applies `action` in place. Throws on illegal actions.
  void ApplyAction(Action action);
  std::unique_ptr<State> Child(Action action) const;

  InfoStateKey Key(Player player) const;
  std::string InformationStateString(Player player) const;
  std::vector<double> InformationStateTensor(Player player) const;
  void InformationStateTensor(Player player, std::span<double> out) const;

  const std::vector<PlayerAction>& History() const { return history_; }
  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> shared_game() const { return game_; }

  virtual std::unique_ptr<State> Clone() const = 0;
  virtual std::string ToString() const = 0;

 protected:
  virtual std::vector<Action> DoLegalActions() const = 0;
  virtual ActionsAndProbs DoChanceOutcomes() const = 0;
  virtual std::array<double, 2> DoReturns() const = 0;
  virtual void DoApplyAction(Action action) = 0;
  virtual std::string DoInformationStateString(Player player) const = 0;
  // `out` is zero-filled and has the game's tensor size.
  virtual void DoInformationStateTensor(Player player,
                                        std::span<double> out) const = 0;

  std::shared_ptr<const Game> game_;
  std::vector<PlayerAction> history_;
};

class Game : public std::enable_shared_from_this<Game> {
 public:
  explicit Game(GameSpec spec) : spec_(spec) {}
  virtual ~Game() = default;

  const GameSpec& spec() const { return spec_; }
  GameId id() const { return spec_.game_id; }
  std::string name() const { return GameIdToString(spec_.game_id); }
  double max_utility() const { return spec_.max_utility; }

  virtual std::unique_ptr<State> NewInitialState() const = 0;
  // Upper bound on action ids at player nodes (size of a policy head).
  virtual int NumDistinctActions() const = 0;
  virtual int InformationStateTensorSize() const = 0;
  virtual std::string ActionToString(Player player, Action action) const;

 private:
  GameSpec spec_;
};

// Throws ConfigError on unknown ids.
std::shared_ptr<const Game> LoadGame(std::string_view id);
std::shared_ptr<const Game> LoadGame(GameId id);

// Replays an action sequence from the root.
std::unique_ptr<State> StateFromHistory(const Game& game,
                                        const std::vector<PlayerAction>& history);

}  // namespace abr

#endif  // ABR_GAME_H_
