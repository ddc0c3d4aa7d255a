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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Training artifacts (checkpoints and
// curves) are written under the directory given as the first argument.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "abr/anc.h"
#include "abr/beliefs.h"
#include "abr/cfr.h"
#include "abr/config.h"
#include "abr/exact_eval.h"
#include "abr/match.h"
#include "abr/mlp.h"
#include "abr/training.h"
#include "oracles/oracles.h"

namespace abr {
namespace {

namespace fs = std::filesystem;

// Targets and tolerances.
constexpr double kLeducUniformNashConv = 4.74;
constexpr double kLiarsDiceUniformNashConv = 1.56;
constexpr double kNashConvTolerance = 0.01;
constexpr double kOracleSeconds = 60;
constexpr double kLeducCfr1000 = 1e-3;
constexpr double kLeducCfr10000 = 10 * 1e-5;
constexpr double kKuhnCfr100000 = 1e-6;
constexpr double kCfrSeconds = 600;
constexpr double kTabularRecovery = 0.95;
constexpr double kLeducFaRecovery = 0.80;
constexpr double kLiarsDiceFaRecovery = 0.85;
constexpr double kLowerBoundSlack = 1e-9;
constexpr double kBeliefTolerance = 1e-12;
constexpr double kBeliefSeconds = 300;
constexpr double kGradientTolerance = 1e-4;
constexpr double kGradientStep = 1e-5;
constexpr double kGradientSeconds = 60;
constexpr double kConnectFourWinRate = 0.95;
constexpr int kConnectFourGames = 1000;
constexpr int kTicTacToeGames = 500;
constexpr int kTicTacToeSimulations = 10000;
constexpr int kMatchGames = 1024;
constexpr double kPerturbRecovery = 0.90;

// Training budgets.
constexpr int kSimulations = 800;
constexpr std::int64_t kLeducTabularEpisodes = 20000;
constexpr std::int64_t kLiarsDiceTabularEpisodes = 50000;
constexpr std::int64_t kFaEpisodes = 20000;
constexpr std::int64_t kConnectFourEpisodes = 200;
constexpr double kRootNoiseAlpha = 0.3;

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void Report(bool pass, const std::string& id, const std::string& text) {
  if (!pass) ++failures;
  std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), text.c_str());
  std::fflush(stdout);
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// Exploration scale of the searcher's PUCT term in units of the game's
// utility range; Leduc payoffs reach 13, the others 1.
double UctC(GameId id) {
  return 2.6 * LoadGame(id)->max_utility();
}

struct Trained {
  std::string label;
  AncReport anc;
  double seconds = 0;
};

std::vector<Trained> all_trained;

// Trains one exploiter per seat against the profile given by `source` and
// evaluates the pair under the exact protocol.
Trained TrainAndEvaluate(const fs::path& root, GameId id, const std::string& source,
                         EvaluatorKind kind, std::int64_t episodes,
                         const std::string& label) {
  const auto t0 = Clock::now();
  auto game = LoadGame(id);
  auto tree = CachedGameTree(id);
  std::array<std::shared_ptr<const AbrSearcher>, 2> abr;
  for (Player seat : {0, 1}) {
    auto opponent = ResolvePolicy(source, id, 1 - seat);
    TrainConfig tc;
    tc.seat = seat;
    tc.evaluator = kind;
    tc.max_episodes = episodes;
    tc.checkpoint_every = episodes / 10;
    tc.checkpoint_dir = (root / label / ("seat" + std::to_string(seat))).string();
    tc.search.num_simulations = kSimulations;
    tc.search.uct_c = UctC(id);
    tc.search.root_noise_alpha = kRootNoiseAlpha;
    tc.seed = 11 + seat;
    const TrainResult r = TrainAbr(game, opponent, tc);
    SearchConfig sc;
    sc.num_simulations = kSimulations;
    sc.uct_c = UctC(id);
    sc.seed = 5;
    abr[seat] = std::make_shared<AbrSearcher>(game, seat, opponent,
                                              r.checkpoint.MakeEvaluator(), sc);
  }
  Trained t{label, ComputeAnc(tree.get(), abr, AncProtocol::kExact), 0};
  t.seconds = Since(t0);
  all_trained.push_back(t);
  return t;
}

void Criterion1() {
  bool pass = true;
  std::string text;
  for (auto [id, target] : {std::pair{GameId::kLeducPoker, kLeducUniformNashConv},
                            std::pair{GameId::kLiarsDice, kLiarsDiceUniformNashConv}}) {
    const auto t0 = Clock::now();
    auto tree = std::make_shared<const GameTree>(GameTree::Build(LoadGame(id)));
    const UniformPolicy uniform;
    const double nc = NashConv(*tree, uniform, uniform).nashconv;
    const double s = Since(t0);
    pass = pass && std::abs(nc - target) <= kNashConvTolerance && s < kOracleSeconds;
    text += Format("%s %.4f (target %.2f+-%.2f, %.1fs) ", GameIdToString(id).c_str(), nc,
                   target, kNashConvTolerance, s);
  }
  Report(pass, "1 exact oracle:", text);
}

void Criterion2() {
  const auto t0 = Clock::now();
  auto leduc = CachedGameTree(GameId::kLeducPoker);
  CfrPlusSolver solver(leduc);
  solver.Run(1000);
  auto avg = solver.AveragePolicy();
  const double e1000 = NashConv(*leduc, *avg[0], *avg[1]).exploitability;
  solver.Run(9000);
  avg = solver.AveragePolicy();
  const double e10000 = NashConv(*leduc, *avg[0], *avg[1]).exploitability;
  auto kuhn = CachedGameTree(GameId::kKuhnPoker);
  CfrPlusSolver kuhn_solver(kuhn);
  kuhn_solver.Run(100000);
  const auto kavg = kuhn_solver.AveragePolicy();
  const double k = NashConv(*kuhn, *kavg[0], *kavg[1]).exploitability;
  const double s = Since(t0);
  Report(e1000 <= kLeducCfr1000 && e10000 <= kLeducCfr10000 && k <= kKuhnCfr100000 &&
             s < kCfrSeconds,
         "2 CFR+ convergence:",
         Format("leduc@1e3 %.3g (<=%.0e) leduc@1e4 %.3g (<=%.0e) kuhn@1e5 %.3g (<=%.0e) "
                "in %.0fs",
                e1000, kLeducCfr1000, e10000, kLeducCfr10000, k, kKuhnCfr100000, s));
}

double Ratio(const Trained& t) { return t.anc.anc / *t.anc.nashconv; }

std::string RatioText(const Trained& t) {
  return Format("%s %.2f%% (%.0fs)", t.label.c_str(), 100 * Ratio(t), t.seconds);
}

void Criterion3And4(const fs::path& root) {
  const Trained lt = TrainAndEvaluate(root, GameId::kLeducPoker, "uniform",
                                      EvaluatorKind::kTabular, kLeducTabularEpisodes,
                                      "leduc_tabular");
  const Trained dt = TrainAndEvaluate(root, GameId::kLiarsDice, "uniform",
                                      EvaluatorKind::kTabular, kLiarsDiceTabularEpisodes,
                                      "liars_dice_tabular");
  Report(Ratio(lt) >= kTabularRecovery && Ratio(dt) >= kTabularRecovery,
         "3 tabular ABR recovery:",
         RatioText(lt) + " " + RatioText(dt) + Format(" (target >=%.2f)", kTabularRecovery));
  const Trained lf = TrainAndEvaluate(root, GameId::kLeducPoker, "uniform",
                                      EvaluatorKind::kFunctionApproximation, kFaEpisodes,
                                      "leduc_fa");
  const Trained df = TrainAndEvaluate(root, GameId::kLiarsDice, "uniform",
                                      EvaluatorKind::kFunctionApproximation, kFaEpisodes,
                                      "liars_dice_fa");
  Report(Ratio(lf) >= kLeducFaRecovery && Ratio(df) >= kLiarsDiceFaRecovery,
         "4 FA ABR recovery:",
         RatioText(lf) + Format(" (>=%.2f) ", kLeducFaRecovery) + RatioText(df) +
             Format(" (>=%.2f)", kLiarsDiceFaRecovery));
}

void Criterion5() {
  int violations = 0;
  double worst = -1e300;
  for (const Trained& t : all_trained) {
    const double gap = t.anc.anc - *t.anc.nashconv;
    worst = std::max(worst, gap);
    if (gap > kLowerBoundSlack) ++violations;
    for (const AncSeat& seat : t.anc.seats) {
      if (seat.value > *seat.br_value + kLowerBoundSlack) ++violations;
    }
  }
  Report(violations == 0 && !all_trained.empty(), "5 lower bound:",
         Format("%zu profiles, %d violations, max ANC-NashConv %.4f", all_trained.size(),
                violations, worst));
}

void Criterion6() {
  const auto t0 = Clock::now();
  double worst = 0;
  long checked = 0;
  bool support_ok = true;
  for (GameId id : {GameId::kKuhnPoker, GameId::kLeducPoker}) {
    auto tree = CachedGameTree(id);
    for (int trial = 0; trial < 10; ++trial) {
      auto opponent = RandomTabularPolicy(id, -1, 1000 + trial);
      for (Player p : {0, 1}) {
        const auto all = oracle::AllPosteriors(tree->game(), p, *opponent);
        support_ok = support_ok && all.size() == tree->infostates(p).size();
        for (const InfoStateInfo& info : tree->infostates(p)) {
          const BeliefDistribution b = Posterior(tree->game(), info.key, *opponent);
          std::map<std::string, double> mine;
          for (size_t k = 0; k < b.support.size(); ++k) {
            mine[oracle::HistoryString(*b.support[k])] += b.weights[k];
          }
          const auto& reference = all.at(info.key.observation);
          support_ok = support_ok && mine.size() == reference.size();
          for (const auto& [h, w] : reference) {
            const auto it = mine.find(h);
            worst = std::max(worst, it == mine.end() ? 1.0 : std::abs(it->second - w));
          }
          ++checked;
        }
      }
    }
  }
  const double s = Since(t0);
  Report(support_ok && worst <= kBeliefTolerance && s < kBeliefSeconds,
         "6 belief oracle:",
         Format("%ld infostates, max |diff| %.2g (<=%.0e) in %.1fs", checked, worst,
                kBeliefTolerance, s));
}

void Criterion7() {
  const auto t0 = Clock::now();
  auto game = LoadGame(GameId::kLeducPoker);
  const int input = game->InformationStateTensorSize();
  const int actions = game->NumDistinctActions();
  Mlp net(input, actions, 2, 16, 7);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 0.3);
  std::vector<double> params = net.Parameters();
  for (double& p : params) p = normal(rng);
  net.SetParameters(params);
  // A batch of real Leduc information states with random targets.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<TrainingExample> examples;
  auto state = game->NewInitialState();
  while (examples.size() < 16) {
    if (state->IsTerminal()) state = game->NewInitialState();
    const std::vector<Action> legal = state->LegalActions();
    if (!state->IsChanceNode()) {
      TrainingExample ex;
      ex.features = state->InformationStateTensor(state->CurrentPlayer());
      ex.legal = legal;
      double total = 0;
      for (size_t i = 0; i < legal.size(); ++i) total += ex.target_policy.emplace_back(u(rng));
      for (double& t : ex.target_policy) t /= total;
      ex.z = 2 * u(rng) - 1;
      examples.push_back(ex);
    }
    state->ApplyAction(legal[rng() % legal.size()]);
  }
  std::vector<const TrainingExample*> ptrs;
  for (const auto& ex : examples) ptrs.push_back(&ex);
  const MlpBatch batch = MakeBatch(ptrs, input, actions);
  constexpr double kL2 = 1e-3;
  std::vector<double> grad;
  net.Gradient(batch, kL2, &grad);
  double worst = 0;
  for (size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + kGradientStep;
    net.SetParameters(params);
    const double up = net.Loss(batch, kL2).total();
    params[i] = saved - kGradientStep;
    net.SetParameters(params);
    const double down = net.Loss(batch, kL2).total();
    params[i] = saved;
    const double numeric = (up - down) / (2 * kGradientStep);
    const double denom = std::max({std::abs(numeric), std::abs(grad[i]), 1e-8});
    worst = std::max(worst, std::abs(numeric - grad[i]) / denom);
  }
  const double s = Since(t0);
  Report(worst < kGradientTolerance && s < kGradientSeconds, "7 gradient check:",
         Format("%zu parameters, max relative error %.2g (<%.0e) in %.1fs", params.size(),
                worst, kGradientTolerance, s));
}

void Criterion8(const fs::path& root) {
  // Connect Four: a briefly trained tabular exploiter per seat.
  auto c4 = LoadGame(GameId::kConnectFour);
  auto uniform = std::make_shared<UniformPolicy>();
  const auto t0 = Clock::now();
  std::array<std::shared_ptr<const AbrSearcher>, 2> searchers;
  for (Player seat : {0, 1}) {
    TrainConfig tc;
    tc.seat = seat;
    tc.max_episodes = kConnectFourEpisodes;
    tc.checkpoint_every = kConnectFourEpisodes;
    tc.checkpoint_dir = (root / "connect_four_tabular" / ("seat" + std::to_string(seat))).string();
    tc.search.num_simulations = kSimulations;
    tc.seed = 21 + seat;
    const TrainResult r = TrainAbr(c4, uniform, tc);
    SearchConfig sc;
    sc.num_simulations = kSimulations;
    sc.seed = 6;
    searchers[seat] = std::make_shared<AbrSearcher>(c4, seat, uniform,
                                                    r.checkpoint.MakeEvaluator(), sc);
  }
  AbrAgent abr("abr", searchers);
  int wins = 0;
  for (int g = 0; g < kConnectFourGames; ++g) {
    const Player seat = g % 2;
    std::mt19937_64 rng(MixSeed(31, g));
    abr.NewGame(seat);
    auto state = c4->NewInitialState();
    while (!state->IsTerminal()) {
      const std::vector<Action> legal = state->LegalActions();
      state->ApplyAction(state->CurrentPlayer() == seat ? abr.Act(*state, rng)
                                                        : legal[rng() % legal.size()]);
    }
    wins += state->Returns()[seat] > 0;
  }
  const double win_rate = static_cast<double>(wins) / kConnectFourGames;
  const double c4_seconds = Since(t0);

  // Tic-Tac-Toe: untrained search against an exact minimax oracle.
  auto ttt = LoadGame(GameId::kTicTacToe);
  oracle::Minimax minimax(*ttt);
  const auto t1 = Clock::now();
  long decisions = 0, losing = 0, avoidable_losing = 0;
  for (int g = 0; g < kTicTacToeGames; ++g) {
    const Player seat = g % 2;
    SearchConfig sc;
    sc.num_simulations = kTicTacToeSimulations;
    sc.seed = g;
    AbrSearcher searcher(ttt, seat, uniform, std::make_shared<ZeroEvaluator>(), sc);
    SearchTree tree(seat);
    std::mt19937_64 rng(MixSeed(99, g));
    auto state = ttt->NewInitialState();
    int move = 0;
    while (!state->IsTerminal()) {
      const std::vector<Action> legal = state->LegalActions();
      Action a;
      if (state->CurrentPlayer() == seat) {
        a = searcher.AbrAction(state->Key(seat), tree, rng, false, move++).action;
        const std::set<Action> bad = minimax.LosingActions(*state);
        ++decisions;
        if (bad.count(a)) {
          ++losing;
          if (bad.size() < legal.size()) ++avoidable_losing;
        }
      } else {
        a = legal[rng() % legal.size()];
      }
      state->ApplyAction(a);
    }
  }
  Report(win_rate >= kConnectFourWinRate && avoidable_losing == 0,
         "8 perfect information:",
         Format("connect_four win rate %.3f over %d games (>=%.2f, %.0fs); tic_tac_toe "
                "%ld avoidable minimax-losing moves in %ld decisions over %d games "
                "(target 0, %.0fs)",
                win_rate, kConnectFourGames, kConnectFourWinRate, c4_seconds,
                avoidable_losing, decisions, kTicTacToeGames, Since(t1)));
}

void Criterion9() {
  auto tree = CachedGameTree(GameId::kLeducPoker);
  const GameId id = GameId::kLeducPoker;
  auto uniform = std::make_shared<UniformPolicy>();
  std::array<std::shared_ptr<const Policy>, 2> cfr = {ResolvePolicy("cfr:1000", id, 0),
                                                       ResolvePolicy("cfr:1000", id, 1)};
  struct BySeat final : Policy {
    std::array<std::shared_ptr<const Policy>, 2> p;
    PolicyKind kind() const override { return PolicyKind::kTabular; }
    std::vector<double> ActionProbabilities(const InfoStateKey& key,
                                            std::span<const Action> legal) const override {
      return p[key.player]->ActionProbabilities(key, legal);
    }
    std::string Describe() const override { return "cfr:1000"; }
  };
  auto by_seat = std::make_shared<BySeat>();
  by_seat->p = cfr;
  const double exact = 0.5 * (ExpectedValue(*tree, *cfr[0], *uniform)[0] +
                              ExpectedValue(*tree, *uniform, *cfr[1])[1]);
  PolicyAgent row("cfr", by_seat), col("uniform", uniform), mirror("cfr", by_seat);
  const MatchReport vs = PlayMatch(tree->game(), row, col, {.num_games = kMatchGames, .seed = 1});
  const MatchReport self =
      PlayMatch(tree->game(), row, mirror, {.num_games = kMatchGames, .seed = 2});
  const bool sign = vs.row_mean > 0 && (vs.row_mean > 0) == (exact > 0);
  const bool covers = std::abs(self.row_mean) <= self.row_ci95;
  Report(sign && covers, "9 head-to-head:",
         Format("cfr:1000 vs uniform %.4f+-%.4f over %d games (exact %.4f); self-play "
                "%.4f+-%.4f",
                vs.row_mean, vs.row_ci95, kMatchGames, exact, self.row_mean, self.row_ci95));
}

void Criterion10(const fs::path& root) {
  std::string text;
  bool pass = true;
  for (const char* source : {"perturb:0.3:1:cfr:1000", "perturb:0.6:1:cfr:1000"}) {
    std::string label = std::string("leduc_") + source;
    std::replace(label.begin(), label.end(), ':', '_');
    const Trained t = TrainAndEvaluate(root, GameId::kLeducPoker, source,
                                       EvaluatorKind::kTabular, kLeducTabularEpisodes, label);
    pass = pass && Ratio(t) >= kPerturbRecovery;
    text += Format("%s NashConv %.4f recovery %.2f%% (%.0fs) ", source, *t.anc.nashconv,
                   100 * Ratio(t), t.seconds);
  }
  Report(pass, "10 perturbed targets:",
         text + Format("(target >=%.2f)", kPerturbRecovery));
}

}  // namespace
}  // namespace abr

int main(int argc, char** argv) {
  using namespace abr;
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_artifacts");
  fs::create_directories(root);
  const std::vector<std::pair<const char*, std::function<void()>>> steps = {
      {"1", [] { Criterion1(); }},
      {"2", [] { Criterion2(); }},
      {"3-4", [&] { Criterion3And4(root); }},
      {"6", [] { Criterion6(); }},
      {"7", [] { Criterion7(); }},
      {"8", [&] { Criterion8(root); }},
      {"9", [] { Criterion9(); }},
      {"10", [&] { Criterion10(root); }},
      {"5", [] { Criterion5(); }},
  };
  for (const auto& [name, step] : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      Report(false, name, std::string("aborted: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
