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


#ifndef ABR_MLP_H_
#define ABR_MLP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace abr {

struct FAConfig {
  int num_layers = 8;
  int hidden_units = 128;
  double learning_rate = 1e-5;
  double l2_coefficient = 5e-6;
  int batch_size = 512;
  int min_buffer_to_learn = 512;
  int actor_batch = 32;
  int replay_capacity = 1 << 16;
};

struct LossParts {
  double mse = 0;
  double cross_entropy = 0;
  double l2 = 0;
  double total() const { return mse + cross_entropy + l2; }
};

// Dense learner batch: one column per example.
struct MlpBatch {
  Eigen::MatrixXd features;       // input_size x B
  Eigen::MatrixXd target_policy;  // num_actions x B, zero off the legal set
  Eigen::MatrixXd legal_mask;     // num_actions x B, 1 on legal actions
  Eigen::VectorXd z;              // B
};

// Fully connected torso of ReLU layers with a masked-softmax policy head and
// a tanh value head. Loss per example is (z - v)^2 - sum_a pi(a) log p(a),
// averaged over the batch, plus c * ||theta||^2 over every parameter.
class Mlp {
 public:
  Mlp(int input_size, int num_actions, int num_layers, int hidden_units,
      std::uint64_t seed);

  int input_size() const { return input_size_; }
  int num_actions() const { return num_actions_; }
  int num_layers() const { return num_layers_; }
  int hidden_units() const { return hidden_units_; }

  // prior over `legal` (indices into the policy head) and value in (-1, 1).
  void Evaluate(std::span<const double> features, std::span<const int> legal,
                std::vector<double>* prior, double* value) const;

  LossParts Loss(const MlpBatch& batch, double l2_coefficient) const;
  // Fills `grad` (same layout as Parameters()) and returns the loss.
  LossParts Gradient(const MlpBatch& batch, double l2_coefficient,
                     std::vector<double>* grad) const;
  // theta <- theta - lr * grad(loss). Throws NumericalError on a non-finite
  // loss.
  LossParts SgdStep(const MlpBatch& batch, double learning_rate,
                    double l2_coefficient);

  // Flattened parameters in declared layer order: for each layer its weight
  // matrix (column-major) then its bias; hidden layers, policy head, value
  // head.
  std::vector<double> Parameters() const;
  void SetParameters(std::span<const double> params);
  size_t num_parameters() const;

  std::string Serialize() const;
  static Mlp Deserialize(const std::string& text);

 private:
  struct Forward {
    std::vector<Eigen::MatrixXd> activations;  // Input, then each hidden.
    Eigen::MatrixXd probs;                     // Masked softmax.
    Eigen::RowVectorXd values;                 // tanh outputs.
  };
  Forward Run(const Eigen::MatrixXd& x, const Eigen::MatrixXd& mask) const;
  LossParts LossFrom(const Forward& fwd, const MlpBatch& batch,
                     double l2_coefficient) const;

  int input_size_;
  int num_actions_;
  int num_layers_;
  int hidden_units_;
  // weights_[i] maps layer i's input to its output; the last two entries are
  // the policy and value heads.
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace abr

#endif  // ABR_MLP_H_
