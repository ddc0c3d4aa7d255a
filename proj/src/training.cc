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


#include "abr/training.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace abr {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  ABR_REQUIRE(capacity > 0, "replay capacity must be positive");
}

void ReplayBuffer::Add(TrainingExample example) {
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(std::move(example));
}

std::vector<const TrainingExample*> ReplayBuffer::Sample(
    size_t count, std::mt19937_64& rng) const {
  ABR_REQUIRE(!items_.empty(), "sampling from an empty replay buffer");
  std::uniform_int_distribution<size_t> pick(0, items_.size() - 1);
  std::vector<const TrainingExample*> out(count);
  for (auto& p : out) p = &items_[pick(rng)];
  return out;
}

namespace {

std::string Fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double ParseDouble(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("malformed " + what + " '" + s + "'");
  }
  return v;
}

std::int64_t ParseInt(const std::string& s, const std::string& what) {
  size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw ConfigError("malformed " + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string field;
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

inline constexpr int kCheckpointVersion = 1;

}  // namespace

std::string CurveCsvHeader() { return "step,mean_return,mse,ce,l2,buffer_size"; }

std::string CurveCsvRow(const CurvePoint& p) {
  return std::to_string(p.step) + "," + Fmt(p.mean_return) + "," + Fmt(p.mse) +
         "," + Fmt(p.ce) + "," + Fmt(p.l2) + "," + std::to_string(p.buffer_size);
}

std::vector<CurvePoint> ReadCurveCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file " + path);
  std::string line;
  std::getline(in, line);
  if (line != CurveCsvHeader()) throw ConfigError(path + ": bad curve header");
  std::vector<CurvePoint> curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = Split(line, ',');
    if (f.size() != 6) throw ConfigError(path + ": malformed row '" + line + "'");
    curve.push_back({ParseInt(f[0], "step"), ParseDouble(f[1], "mean_return"),
                     ParseDouble(f[2], "mse"), ParseDouble(f[3], "ce"),
                     ParseDouble(f[4], "l2"), ParseInt(f[5], "buffer_size")});
  }
  return curve;
}

void TrainConfig::Validate() const {
  search.Validate();
  if (seat != 0 && seat != 1) throw ConfigError("seat must be 0 or 1");
  if (max_episodes < 1) throw ConfigError("max_episodes must be >= 1");
  if (max_seconds < 0) throw ConfigError("max_seconds must be >= 0");
  if (checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
  if (num_actors < 1) throw ConfigError("num_actors must be >= 1");
  if (fa.num_layers < 1 || fa.hidden_units < 1 || !(fa.learning_rate > 0) ||
      fa.l2_coefficient < 0 || fa.batch_size < 1 ||
      fa.min_buffer_to_learn < 1 || fa.actor_batch < 1 ||
      fa.replay_capacity < 1) {
    throw ConfigError("FA configuration fields must be positive");
  }
}

std::shared_ptr<const Evaluator> Checkpoint::MakeEvaluator() const {
  if (kind == EvaluatorKind::kTabular) {
    ABR_REQUIRE(tabular != nullptr, "tabular checkpoint without a table");
    return tabular;
  }
  ABR_REQUIRE(mlp != nullptr, "network checkpoint without a network");
  return std::make_shared<MlpEvaluator>(mlp);
}

std::string SerializeCheckpoint(const Checkpoint& ck) {
  std::ostringstream os;
  os << "format_version " << kCheckpointVersion << '\n'
     << "game_id " << GameIdToString(ck.game) << '\n'
     << "player " << ck.seat << '\n'
     << "kind " << EvaluatorKindToString(ck.kind) << "_evaluator\n"
     << "step " << ck.step << '\n'
     << "learner_steps " << ck.learner_steps << '\n'
     << "fa_num_layers " << ck.fa.num_layers << '\n'
     << "fa_hidden_units " << ck.fa.hidden_units << '\n'
     << "fa_learning_rate " << Fmt(ck.fa.learning_rate) << '\n'
     << "fa_l2_coefficient " << Fmt(ck.fa.l2_coefficient) << '\n'
     << "fa_batch_size " << ck.fa.batch_size << '\n'
     << "fa_min_buffer_to_learn " << ck.fa.min_buffer_to_learn << '\n'
     << "fa_actor_batch " << ck.fa.actor_batch << '\n'
     << "fa_replay_capacity " << ck.fa.replay_capacity << '\n';
  if (ck.kind == EvaluatorKind::kTabular) {
    // One line per key: normalized prior, mean value and count.
    const std::map<std::string, TabularEvaluator::Entry> sorted = [&] {
      auto snap = ck.tabular->Snapshot();
      return std::map<std::string, TabularEvaluator::Entry>(snap.begin(),
                                                            snap.end());
    }();
    for (const auto& [key, e] : sorted) {
      if (e.count == 0) continue;
      double total = 0;
      for (double p : e.prior_sum) total += p;
      os << key << '\t';
      for (size_t i = 0; i < e.prior_sum.size(); ++i) {
        os << (i ? "," : "") << Fmt(e.prior_sum[i] / total);
      }
      os << '\t' << Fmt(e.value_sum / static_cast<double>(e.count)) << '\t'
         << e.count << '\n';
    }
  } else {
    os << "network\n" << ck.mlp->Serialize();
  }
  return os.str();
}

void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write checkpoint " + path);
    out << SerializeCheckpoint(checkpoint);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint ParseCheckpoint(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> header;
  Checkpoint ck;
  auto tabular = std::make_shared<TabularEvaluator>();
  bool network = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "network") {
      network = true;
      break;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      const size_t sp = line.find(' ');
      if (sp == std::string::npos) {
        throw ConfigError("malformed checkpoint line '" + line + "'");
      }
      header[line.substr(0, sp)] = line.substr(sp + 1);
      continue;
    }
    const std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 4) throw ConfigError("malformed checkpoint entry '" + line + "'");
    std::vector<double> prior;
    for (const std::string& p : Split(f[1], ',')) {
      prior.push_back(ParseDouble(p, "prior at key '" + f[0] + "'"));
    }
    const std::string err = ValidateDistribution(prior);
    if (!err.empty()) {
      throw ConfigError("invalid prior at key '" + f[0] + "': " + err);
    }
    TabularEvaluator::Entry e;
    e.count = ParseInt(f[3], "count");
    if (e.count < 1) throw ConfigError("non-positive count at key '" + f[0] + "'");
    const double n = static_cast<double>(e.count);
    for (double p : prior) e.prior_sum.push_back(p * n);
    e.value_sum = ParseDouble(f[2], "value") * n;
    tabular->SetEntry(f[0], std::move(e));
  }
  for (const char* field :
       {"format_version", "game_id", "player", "kind", "step", "learner_steps"}) {
    if (!header.count(field)) {
      throw ConfigError(std::string("checkpoint lacks header field ") + field);
    }
  }
  if (header["format_version"] != std::to_string(kCheckpointVersion)) {
    throw ConfigError("unsupported checkpoint format_version " +
                      header["format_version"]);
  }
  ck.game = GameIdFromString(header["game_id"]);
  ck.seat = static_cast<Player>(ParseInt(header["player"], "player"));
  if (ck.seat != 0 && ck.seat != 1) throw ConfigError("bad checkpoint player");
  const std::string kind = header["kind"];
  if (kind == "tabular_evaluator") {
    ck.kind = EvaluatorKind::kTabular;
  } else if (kind == "fa_evaluator") {
    ck.kind = EvaluatorKind::kFunctionApproximation;
  } else {
    throw ConfigError("unknown checkpoint kind '" + kind + "'");
  }
  ck.step = ParseInt(header["step"], "step");
  ck.learner_steps = ParseInt(header["learner_steps"], "learner_steps");
  auto get = [&](const char* k, auto fallback) {
    auto it = header.find(k);
    return it == header.end() ? fallback : it->second;
  };
  ck.fa.num_layers = ParseInt(get("fa_num_layers", std::to_string(ck.fa.num_layers)), "fa_num_layers");
  ck.fa.hidden_units = ParseInt(get("fa_hidden_units", std::to_string(ck.fa.hidden_units)), "fa_hidden_units");
  ck.fa.learning_rate = ParseDouble(get("fa_learning_rate", Fmt(ck.fa.learning_rate)), "fa_learning_rate");
  ck.fa.l2_coefficient = ParseDouble(get("fa_l2_coefficient", Fmt(ck.fa.l2_coefficient)), "fa_l2_coefficient");
  ck.fa.batch_size = ParseInt(get("fa_batch_size", std::to_string(ck.fa.batch_size)), "fa_batch_size");
  ck.fa.min_buffer_to_learn = ParseInt(get("fa_min_buffer_to_learn", std::to_string(ck.fa.min_buffer_to_learn)), "fa_min_buffer_to_learn");
  ck.fa.actor_batch = ParseInt(get("fa_actor_batch", std::to_string(ck.fa.actor_batch)), "fa_actor_batch");
  ck.fa.replay_capacity = ParseInt(get("fa_replay_capacity", std::to_string(ck.fa.replay_capacity)), "fa_replay_capacity");
  if (ck.kind == EvaluatorKind::kTabular) {
    ck.tabular = std::move(tabular);
  } else {
    if (!network) throw ConfigError("network checkpoint lacks parameters");
    std::string rest((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    ck.mlp = std::make_shared<const Mlp>(Mlp::Deserialize(rest));
  }
  return ck;
}

Checkpoint LoadCheckpoint(const std::string& path,
                          std::optional<GameId> expected_game) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Checkpoint ck;
  try {
    ck = ParseCheckpoint(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (expected_game && ck.game != *expected_game) {
    throw ConfigError(path + ": checkpoint is for " + GameIdToString(ck.game) +
                      ", expected " + GameIdToString(*expected_game));
  }
  return ck;
}

MlpBatch MakeBatch(std::span<const TrainingExample* const> examples,
                   int input_size, int num_actions) {
  const int n = static_cast<int>(examples.size());
  MlpBatch batch;
  batch.features.resize(input_size, n);
  batch.target_policy = Eigen::MatrixXd::Zero(num_actions, n);
  batch.legal_mask = Eigen::MatrixXd::Zero(num_actions, n);
  batch.z.resize(n);
  for (int b = 0; b < n; ++b) {
    const TrainingExample& ex = *examples[b];
    ABR_REQUIRE(static_cast<int>(ex.features.size()) == input_size,
                "feature length mismatch");
    for (int i = 0; i < input_size; ++i) batch.features(i, b) = ex.features[i];
    for (size_t i = 0; i < ex.legal.size(); ++i) {
      ABR_REQUIRE(ex.legal[i] >= 0 && ex.legal[i] < num_actions,
                  "action outside the policy head");
      batch.legal_mask(ex.legal[i], b) = 1.0;
      batch.target_policy(ex.legal[i], b) = ex.target_policy[i];
    }
    batch.z(b) = ex.z;
  }
  return batch;
}

namespace {

// Single owner of evaluator mutation. Consumes episodes in arrival order.
class Learner {
 public:
  Learner(const TrainConfig& config, Checkpoint* ck,
          std::vector<CurvePoint>* curve)
      : config_(config),
        ck_(*ck),
        curve_(*curve),
        replay_(static_cast<size_t>(config.fa.replay_capacity)) {
    if (ck_.kind == EvaluatorKind::kFunctionApproximation) {
      net_ = std::make_unique<Mlp>(*ck_.mlp);
      mlp_eval_ = std::make_shared<MlpEvaluator>(ck_.mlp);
    }
  }

  std::shared_ptr<const Evaluator> evaluator() const {
    if (mlp_eval_) return mlp_eval_;
    return ck_.tabular;
  }

  void Consume(Episode episode) {
    window_return_ += episode.episode_return;
    ++window_episodes_;
    if (ck_.kind == EvaluatorKind::kTabular) {
      LogTabularLoss(episode.examples);
      ck_.tabular->Update(episode.examples);
    } else {
      for (TrainingExample& ex : episode.examples) {
        replay_.Add(std::move(ex));
        if (replay_.size() < static_cast<size_t>(config_.fa.min_buffer_to_learn)) {
          continue;
        }
        if (++pending_ >= config_.fa.actor_batch) {
          pending_ = 0;
          LearnerStep();
        }
      }
    }
    ++ck_.step;
    if (ck_.step % config_.checkpoint_every == 0) Emit();
  }

  void Finish() {
    if (curve_.empty() || curve_.back().step != ck_.step) Emit();
  }

 private:
  void LogTabularLoss(const std::vector<TrainingExample>& examples) {
    for (const TrainingExample& ex : examples) {
      const EvaluatorOutput out = ck_.tabular->Evaluate(
          ex.features, InfoStateKey{config_.seat, ex.key}, ex.legal);
      loss_.mse += (ex.z - out.value) * (ex.z - out.value);
      for (size_t i = 0; i < ex.legal.size(); ++i) {
        if (ex.target_policy[i] > 0) {
          loss_.cross_entropy -=
              ex.target_policy[i] * std::log(std::max(out.prior[i], 1e-300));
        }
      }
      ++loss_count_;
    }
  }

  void LearnerStep() {
    std::mt19937_64 rng(MixSeed(config_.seed ^ 0x6c6561726e6572ULL,
                                static_cast<std::uint64_t>(ck_.learner_steps)));
    const std::vector<const TrainingExample*> sample =
        replay_.Sample(static_cast<size_t>(config_.fa.batch_size), rng);
    const MlpBatch batch =
        MakeBatch(sample, net_->input_size(), net_->num_actions());
    const LossParts parts = net_->SgdStep(batch, config_.fa.learning_rate,
                                          config_.fa.l2_coefficient);
    loss_.mse += parts.mse;
    loss_.cross_entropy += parts.cross_entropy;
    loss_.l2 += parts.l2;
    ++loss_count_;
    ++ck_.learner_steps;
    ck_.mlp = std::make_shared<const Mlp>(*net_);
    mlp_eval_->Publish(ck_.mlp);
  }

  void Emit() {
    CurvePoint p;
    p.step = ck_.step;
    p.mean_return = window_episodes_ ? window_return_ / window_episodes_ : 0;
    if (loss_count_ > 0) {
      p.mse = loss_.mse / loss_count_;
      p.ce = loss_.cross_entropy / loss_count_;
      p.l2 = loss_.l2 / loss_count_;
    }
    p.buffer_size = ck_.kind == EvaluatorKind::kTabular
                        ? static_cast<std::int64_t>(ck_.tabular->size())
                        : static_cast<std::int64_t>(replay_.size());
    curve_.push_back(p);
    window_return_ = 0;
    window_episodes_ = 0;
    loss_ = LossParts();
    loss_count_ = 0;
    if (!config_.checkpoint_dir.empty()) WriteFiles();
  }

  void WriteFiles() {
    namespace fs = std::filesystem;
    fs::create_directories(config_.checkpoint_dir);
    const fs::path dir(config_.checkpoint_dir);
    SaveCheckpoint(ck_, (dir / "checkpoint.txt").string());
    std::ofstream out(dir / "curve.csv", std::ios::binary);
    out << CurveCsvHeader() << '\n';
    for (const CurvePoint& p : curve_) out << CurveCsvRow(p) << '\n';
  }

  const TrainConfig& config_;
  Checkpoint& ck_;
  std::vector<CurvePoint>& curve_;
  ReplayBuffer replay_;
  std::unique_ptr<Mlp> net_;
  std::shared_ptr<MlpEvaluator> mlp_eval_;
  int pending_ = 0;
  double window_return_ = 0;
  std::int64_t window_episodes_ = 0;
  LossParts loss_;
  std::int64_t loss_count_ = 0;
};

}  // namespace

TrainResult TrainAbr(std::shared_ptr<const Game> game,
                     std::shared_ptr<const Policy> opponent,
                     const TrainConfig& config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  TrainResult result;
  Checkpoint& ck = result.checkpoint;
  if (!config.resume_from.empty()) {
    ck = LoadCheckpoint(config.resume_from, game->id());
    if (ck.seat != config.seat || ck.kind != config.evaluator) {
      throw ConfigError("resume checkpoint " + config.resume_from +
                        " does not match the requested seat and evaluator");
    }
    const std::filesystem::path curve_path =
        std::filesystem::path(config.resume_from).parent_path() / "curve.csv";
    if (std::filesystem::exists(curve_path)) {
      for (const CurvePoint& p : ReadCurveCsv(curve_path.string())) {
        if (p.step <= ck.step) result.curve.push_back(p);
      }
    }
  } else {
    ck.game = game->id();
    ck.seat = config.seat;
    ck.kind = config.evaluator;
    ck.fa = config.fa;
    if (ck.kind == EvaluatorKind::kTabular) {
      ck.tabular = std::make_shared<TabularEvaluator>();
    } else {
      ck.mlp = std::make_shared<const Mlp>(
          game->InformationStateTensorSize(), game->NumDistinctActions(),
          config.fa.num_layers, config.fa.hidden_units,
          MixSeed(config.seed, 0x6e6574ULL));
    }
  }

  Learner learner(config, &ck, &result.curve);
  const AbrSearcher searcher(game, config.seat, opponent, learner.evaluator(),
                             config.search);
  const std::int64_t first = ck.step;
  auto out_of_time = [&] {
    return config.max_seconds > 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                   .count() >= config.max_seconds;
  };

  if (config.num_actors == 1) {
    while (ck.step < config.max_episodes && !out_of_time()) {
      std::mt19937_64 rng(MixSeed(config.seed, static_cast<std::uint64_t>(ck.step)));
      learner.Consume(searcher.PlayEpisode(rng, /*training=*/true));
    }
  } else {
    BlockingQueue<Episode> queue(static_cast<size_t>(2 * config.num_actors));
    std::atomic<std::int64_t> next{ck.step};
    std::atomic<bool> stop{false};
    std::vector<std::exception_ptr> errors(config.num_actors);
    std::vector<std::thread> actors;
    for (int a = 0; a < config.num_actors; ++a) {
      actors.emplace_back([&, a] {
        try {
          while (!stop.load()) {
            const std::int64_t e = next.fetch_add(1);
            if (e >= config.max_episodes) break;
            std::mt19937_64 rng(MixSeed(config.seed, static_cast<std::uint64_t>(e)));
            if (!queue.Push(searcher.PlayEpisode(rng, /*training=*/true))) break;
          }
        } catch (...) {
          errors[a] = std::current_exception();
          stop.store(true);
          queue.Close();
        }
      });
    }
    while (ck.step < config.max_episodes && !out_of_time() && !stop.load()) {
      std::optional<Episode> episode = queue.Pop();
      if (!episode) break;
      learner.Consume(std::move(*episode));
    }
    stop.store(true);
    queue.Close();
    for (std::thread& t : actors) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  learner.Finish();
  result.episodes = ck.step - first;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.diagnostics = searcher.diagnostics();
  return result;
}

}  // namespace abr
