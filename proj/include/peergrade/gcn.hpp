// Copyright 2026 the peergrade authors
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

#pragma once

// Graph convolutional regressor over a SOAN graph:
//
//   H(l+1) = ELU(N H(l) W(l)),  l = 0..K-1
//   yhat_i = sigmoid(w_out . H(K)[n+i] + b_out)
//
// trained full-batch with Adam on the mean squared error over the labelled
// items. Gradients are derived by hand; no autodiff.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "peergrade/kernels.hpp"
#include "peergrade/soan.hpp"

namespace peergrade::gcn {

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  /// Reshapes and zero-fills, keeping the allocation when possible.
  void reset(std::size_t r, std::size_t c) {
    rows = r;
    cols = c;
    data.assign(r * c, 0.0);
  }

  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Features {
  kOnes,    // (n+m) x 1 matrix of ones
  kOneHot,  // (n+m) x (n+m) identity
};

struct TrainConfig {
  std::size_t layers = 2;
  std::size_t dim = 64;
  std::size_t epochs = 800;
  double learning_rate = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  Features features = Features::kOnes;

  void check() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct ModelParams {
  std::vector<Matrix> weights;  // weights[0]: d0 x d, weights[l]: d x d
  std::vector<double> head;     // length d
  double bias = 0.0;

  std::size_t layers() const { return weights.size(); }
  std::size_t input_dim() const { return weights.empty() ? 0 : weights.front().rows; }
  std::size_t dim() const { return head.size(); }

  /// Parameter blocks in a fixed order: weights..., head, bias.
  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;

  /// Zero-filled parameters of the same shape.
  ModelParams zeros_like() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct AdamState {
  ModelParams first_moment;
  ModelParams second_moment;
  std::uint64_t step = 0;

  static AdamState for_params(const ModelParams& params);
};

/// Activations kept for the backward pass.
struct ForwardCache {
  const PropagationMatrix* prop = nullptr;
  std::vector<Matrix> aggregated;   // N H(l)
  std::vector<Matrix> pre;          // N H(l) W(l)
  std::vector<Matrix> activations;  // H(l+1)
  std::vector<double> logits;       // per item
  std::vector<double> predictions;  // per item, sigmoid(logits)
};

/// Input features for `nodes` graph nodes.
Matrix input_features(Features kind, std::size_t nodes);

/// Glorot-uniform weights, zero bias. Deterministic in cfg.seed.
ModelParams init_params(const TrainConfig& cfg, std::size_t input_dim);

ForwardCache forward(const ModelParams& params, const PropagationMatrix& prop, const Matrix& h0,
                     const kernels::KernelTable& k = kernels::active());

/// Same as forward(), reusing the buffers already held by `cache`.
void forward_into(const ModelParams& params, const PropagationMatrix& prop, const Matrix& h0,
                  ForwardCache& cache, const kernels::KernelTable& k = kernels::active());

/// (1/|train|) sum (v_i - yhat_i)^2 over train items.
double mse_loss(std::span<const double> predictions, const GroundTruth& truth,
                std::span<const std::size_t> train_ids);

/// Exact gradient of mse_loss with respect to every parameter.
ModelParams backward(const ModelParams& params, const PropagationMatrix& prop,
                     const ForwardCache& cache, const GroundTruth& truth,
                     std::span<const std::size_t> train_ids,
                     const kernels::KernelTable& k = kernels::active());

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const TrainConfig& cfg, const kernels::KernelTable& k = kernels::active());

struct TrainResult {
  ModelParams params;
  std::vector<double> history;  // train loss before each epoch's update
};

/// Full-batch training; returns the last-epoch parameters. Only truth
/// values of `train_ids` are read.
TrainResult train(const PropagationMatrix& prop, const Matrix& h0, const GroundTruth& truth,
                  std::span<const std::size_t> train_ids, const TrainConfig& cfg,
                  const kernels::KernelTable& k = kernels::active());

TrainResult train(const Dataset& dataset, std::span<const std::size_t> train_ids,
                  const TrainConfig& cfg);

/// Predicted valuations for the given items, in request order.
std::vector<double> predict(const ModelParams& params, const PropagationMatrix& prop,
                            const Matrix& h0, std::span<const std::size_t> item_ids,
                            const kernels::KernelTable& k = kernels::active());

}  // namespace peergrade::gcn
