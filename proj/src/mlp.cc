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


#include "abr/mlp.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "abr/core.h"

namespace abr {

Mlp::Mlp(int input_size, int num_actions, int num_layers, int hidden_units,
         std::uint64_t seed)
    : input_size_(input_size),
      num_actions_(num_actions),
      num_layers_(num_layers),
      hidden_units_(hidden_units) {
  ABR_REQUIRE(input_size > 0 && num_actions > 0 && num_layers >= 0 &&
                  hidden_units > 0,
              "invalid network shape");
  std::mt19937_64 rng(seed);
  auto layer = [&](int rows, int cols, double scale) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(rows, cols);
    if (scale > 0) {
      std::normal_distribution<double> normal(0.0, scale);
      for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) w(r, c) = normal(rng);
      }
    }
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(rows));
  };
  int fan_in = input_size;
  for (int i = 0; i < num_layers; ++i) {
    layer(hidden_units, fan_in, std::sqrt(2.0 / fan_in));
    fan_in = hidden_units;
  }
  // Zero heads: an untrained network has a uniform prior and value 0.
  layer(num_actions, fan_in, 0.0);
  layer(1, fan_in, 0.0);
}

Mlp::Forward Mlp::Run(const Eigen::MatrixXd& x,
                      const Eigen::MatrixXd& mask) const {
  Forward fwd;
  fwd.activations.reserve(num_layers_ + 1);
  fwd.activations.push_back(x);
  for (int i = 0; i < num_layers_; ++i) {
    Eigen::MatrixXd z = weights_[i] * fwd.activations.back();
    z.colwise() += biases_[i];
    fwd.activations.push_back(z.cwiseMax(0.0));
  }
  const Eigen::MatrixXd& h = fwd.activations.back();
  Eigen::MatrixXd logits = weights_[num_layers_] * h;
  logits.colwise() += biases_[num_layers_];
  fwd.probs.resize(num_actions_, x.cols());
  for (int b = 0; b < x.cols(); ++b) {
    double max_logit = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < num_actions_; ++a) {
      if (mask(a, b) > 0) max_logit = std::max(max_logit, logits(a, b));
    }
    double total = 0;
    for (int a = 0; a < num_actions_; ++a) {
      const double e = mask(a, b) > 0 ? std::exp(logits(a, b) - max_logit) : 0;
      fwd.probs(a, b) = e;
      total += e;
    }
    fwd.probs.col(b) /= total;
  }
  Eigen::RowVectorXd raw = weights_[num_layers_ + 1] * h;
  raw.array() += biases_[num_layers_ + 1](0);
  fwd.values = raw.array().tanh();
  return fwd;
}

void Mlp::Evaluate(std::span<const double> features, std::span<const int> legal,
                   std::vector<double>* prior, double* value) const {
  ABR_REQUIRE(static_cast<int>(features.size()) == input_size_,
              "feature vector has the wrong length");
  Eigen::VectorXd h =
      Eigen::Map<const Eigen::VectorXd>(features.data(), input_size_);
  for (int i = 0; i < num_layers_; ++i) {
    h = ((weights_[i] * h) + biases_[i]).cwiseMax(0.0);
  }
  const Eigen::MatrixXd& wp = weights_[num_layers_];
  const Eigen::VectorXd& bp = biases_[num_layers_];
  prior->resize(legal.size());
  double max_logit = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < legal.size(); ++i) {
    (*prior)[i] = wp.row(legal[i]).dot(h) + bp(legal[i]);
    max_logit = std::max(max_logit, (*prior)[i]);
  }
  double total = 0;
  for (double& p : *prior) total += (p = std::exp(p - max_logit));
  for (double& p : *prior) p /= total;
  *value = std::tanh(weights_[num_layers_ + 1].row(0).dot(h) +
                     biases_[num_layers_ + 1](0));
}

LossParts Mlp::LossFrom(const Forward& fwd, const MlpBatch& batch,
                        double l2_coefficient) const {
  const double n = static_cast<double>(batch.z.size());
  LossParts parts;
  parts.mse = (batch.z.transpose() - fwd.values).squaredNorm() / n;
  double ce = 0;
  for (int b = 0; b < batch.target_policy.cols(); ++b) {
    for (int a = 0; a < num_actions_; ++a) {
      const double t = batch.target_policy(a, b);
      if (t > 0) ce -= t * std::log(fwd.probs(a, b));
    }
  }
  parts.cross_entropy = ce / n;
  double sq = 0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    sq += weights_[i].squaredNorm() + biases_[i].squaredNorm();
  }
  parts.l2 = l2_coefficient * sq;
  return parts;
}

LossParts Mlp::Loss(const MlpBatch& batch, double l2_coefficient) const {
  return LossFrom(Run(batch.features, batch.legal_mask), batch, l2_coefficient);
}

LossParts Mlp::Gradient(const MlpBatch& batch, double l2_coefficient,
                        std::vector<double>* grad) const {
  ABR_REQUIRE(batch.z.size() >= 1, "empty batch");
  const Forward fwd = Run(batch.features, batch.legal_mask);
  const LossParts parts = LossFrom(fwd, batch, l2_coefficient);
  const double n = static_cast<double>(batch.z.size());

  const Eigen::MatrixXd d_logits = (fwd.probs - batch.target_policy) / n;
  const Eigen::RowVectorXd d_raw =
      (2.0 / n) * (fwd.values - batch.z.transpose()).array() *
      (1.0 - fwd.values.array().square());

  std::vector<Eigen::MatrixXd> gw(weights_.size());
  std::vector<Eigen::VectorXd> gb(biases_.size());
  const Eigen::MatrixXd& h = fwd.activations.back();
  gw[num_layers_] = d_logits * h.transpose();
  gb[num_layers_] = d_logits.rowwise().sum();
  gw[num_layers_ + 1] = d_raw * h.transpose();
  gb[num_layers_ + 1] = Eigen::VectorXd::Constant(1, d_raw.sum());
  Eigen::MatrixXd d_act = weights_[num_layers_].transpose() * d_logits +
                          weights_[num_layers_ + 1].transpose() * d_raw;
  for (int i = num_layers_ - 1; i >= 0; --i) {
    const Eigen::MatrixXd d_pre =
        d_act.array() * (fwd.activations[i + 1].array() > 0).cast<double>();
    gw[i] = d_pre * fwd.activations[i].transpose();
    gb[i] = d_pre.rowwise().sum();
    if (i > 0) d_act = weights_[i].transpose() * d_pre;
  }

  grad->clear();
  grad->reserve(num_parameters());
  for (size_t i = 0; i < weights_.size(); ++i) {
    const Eigen::MatrixXd w = gw[i] + 2.0 * l2_coefficient * weights_[i];
    grad->insert(grad->end(), w.data(), w.data() + w.size());
    const Eigen::VectorXd b = gb[i] + 2.0 * l2_coefficient * biases_[i];
    grad->insert(grad->end(), b.data(), b.data() + b.size());
  }
  return parts;
}

LossParts Mlp::SgdStep(const MlpBatch& batch, double learning_rate,
                       double l2_coefficient) {
  std::vector<double> grad;
  const LossParts parts = Gradient(batch, l2_coefficient, &grad);
  if (!std::isfinite(parts.total())) {
    throw NumericalError("non-finite loss (mse " + std::to_string(parts.mse) +
                         ", ce " + std::to_string(parts.cross_entropy) + ")");
  }
  std::vector<double> params = Parameters();
  for (size_t k = 0; k < params.size(); ++k) params[k] -= learning_rate * grad[k];
  SetParameters(params);
  return parts;
}

size_t Mlp::num_parameters() const {
  size_t n = 0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    n += weights_[i].size() + biases_[i].size();
  }
  return n;
}

std::vector<double> Mlp::Parameters() const {
  std::vector<double> out;
  out.reserve(num_parameters());
  for (size_t i = 0; i < weights_.size(); ++i) {
    out.insert(out.end(), weights_[i].data(),
               weights_[i].data() + weights_[i].size());
    out.insert(out.end(), biases_[i].data(),
               biases_[i].data() + biases_[i].size());
  }
  return out;
}

void Mlp::SetParameters(std::span<const double> params) {
  ABR_REQUIRE(params.size() == num_parameters(), "parameter count mismatch");
  size_t k = 0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    std::copy_n(params.data() + k, weights_[i].size(), weights_[i].data());
    k += weights_[i].size();
    std::copy_n(params.data() + k, biases_[i].size(), biases_[i].data());
    k += biases_[i].size();
  }
}

std::string Mlp::Serialize() const {
  std::ostringstream os;
  os << "mlp 1 " << input_size_ << ' ' << num_actions_ << ' ' << num_layers_
     << ' ' << hidden_units_ << '\n';
  char buf[40];
  const std::vector<double> params = Parameters();
  for (size_t k = 0; k < params.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", params[k]);
    os << buf << ((k + 1) % 16 == 0 || k + 1 == params.size() ? '\n' : ' ');
  }
  return os.str();
}

Mlp Mlp::Deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version, input, actions, layers, hidden;
  if (!(in >> magic >> version >> input >> actions >> layers >> hidden) ||
      magic != "mlp") {
    throw ConfigError("malformed network blob");
  }
  if (version != 1) {
    throw ConfigError("unsupported network version " + std::to_string(version));
  }
  Mlp net(input, actions, layers, hidden, 0);
  std::vector<double> params(net.num_parameters());
  for (double& p : params) {
    if (!(in >> p)) throw ConfigError("truncated network parameters");
  }
  net.SetParameters(params);
  return net;
}

}  // namespace abr
