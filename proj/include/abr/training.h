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


#ifndef ABR_TRAINING_H_
#define ABR_TRAINING_H_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abr/evaluator.h"
#include "abr/mlp.h"
#include "abr/policy.h"
#include "abr/search.h"

namespace abr {

// Bounded FIFO of examples; the oldest are evicted when full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);
  void Add(TrainingExample example);
  // Uniform with replacement over the current contents.
  std::vector<const TrainingExample*> Sample(size_t count,
                                             std::mt19937_64& rng) const;
  size_t size() const { return items_.size(); }
  size_t capacity() const { return capacity_; }

 private:
  size_t capacity_;
  std::deque<TrainingExample> items_;
};

// Bounded blocking multi-producer queue between actors and the learner.
// Push blocks while full; Pop blocks while empty and returns nullopt once the
// queue is closed and drained.
template <typename T>
class BlockingQueue {
 public:
  explicit BlockingQueue(size_t capacity) : capacity_(capacity) {}

  bool Push(T item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  std::optional<T> Pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void Close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_full_.notify_all();
    not_empty_.notify_all();
  }

 private:
  size_t capacity_;
  std::mutex mu_;
  std::condition_variable not_full_, not_empty_;
  std::deque<T> items_;
  bool closed_ = false;
};

struct CurvePoint {
  std::int64_t step = 0;  // Episodes completed.
  double mean_return = 0;  // Searcher's game units, since the last point.
  double mse = 0;
  double ce = 0;
  double l2 = 0;
  std::int64_t buffer_size = 0;
};

std::string CurveCsvHeader();
std::string CurveCsvRow(const CurvePoint& point);
std::vector<CurvePoint> ReadCurveCsv(const std::string& path);

struct TrainConfig {
  Player seat = 0;
  EvaluatorKind evaluator = EvaluatorKind::kTabular;
  std::int64_t max_episodes = 1000;
  double max_seconds = 0;  // 0 disables the wall-clock budget.
  std::int64_t checkpoint_every = 100;
  std::string checkpoint_dir;  // Empty disables checkpoint files.
  std::string resume_from;     // Checkpoint path; empty starts afresh.
  int num_actors = 1;          // 1 runs actor and learner in lockstep.
  SearchConfig search;
  FAConfig fa;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Trained evaluator state, as written to and read from checkpoint files.
struct Checkpoint {
  GameId game = GameId::kKuhnPoker;
  Player seat = 0;
  EvaluatorKind kind = EvaluatorKind::kTabular;
  std::int64_t step = 0;
  std::int64_t learner_steps = 0;
  FAConfig fa;
  std::shared_ptr<TabularEvaluator> tabular;
  std::shared_ptr<const Mlp> mlp;

  std::shared_ptr<const Evaluator> MakeEvaluator() const;
};

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path);
// Throws ConfigError on malformed files or a game mismatch.
Checkpoint ParseCheckpoint(const std::string& text);
Checkpoint LoadCheckpoint(const std::string& path,
                          std::optional<GameId> expected_game = std::nullopt);

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<CurvePoint> curve;
  std::int64_t episodes = 0;
  double seconds = 0;
  SearchDiagnostics diagnostics;
};

// Actors play ABR episodes against `opponent`; the learner fits the
// evaluator to their visit policies and returns. Tabular evaluators absorb
// every example as it arrives; networks take one SGD step on a uniform
// replay batch per fa.actor_batch new examples once the buffer holds
// fa.min_buffer_to_learn. Episode e uses seed MixSeed(seed, e), so with one
// actor a run is reproducible and a resumed run continues the same
// episode stream.
TrainResult TrainAbr(std::shared_ptr<const Game> game,
                     std::shared_ptr<const Policy> opponent,
                     const TrainConfig& config);

// Packs examples into a dense learner batch using action ids as policy-head
// indices.
MlpBatch MakeBatch(std::span<const TrainingExample* const> examples,
                   int input_size, int num_actions);

}  // namespace abr

#endif  // ABR_TRAINING_H_
