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

#include "peergrade/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "peergrade/errors.hpp"
#include "peergrade/rng.hpp"

namespace peergrade::gcn {
namespace {

// out = A * in for sparse A.
void spmm(const CsrMatrix& a, const Matrix& in, Matrix& out, const kernels::KernelTable& k) {
  out.reset(a.rows, in.cols);
  for (std::size_t r = 0; r < a.rows; ++r) {
    double* dst = out.row(r);
    for (std::size_t e = a.row_ptr[r]; e < a.row_ptr[r + 1]; ++e) {
      k.axpy(a.val[e], in.row(a.col[e]), dst, in.cols);
    }
  }
}

// out = x * w, skipping zero coefficients of x.
void matmul(const Matrix& x, const Matrix& w, Matrix& out, const kernels::KernelTable& k) {
  out.reset(x.rows, w.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* xr = x.row(r);
    double* dst = out.row(r);
    for (std::size_t c = 0; c < x.cols; ++c) {
      if (xr[c] != 0.0) k.axpy(xr[c], w.row(c), dst, w.cols);
    }
  }
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) t(c, r) = a(r, c);
  }
  return t;
}

bool row_is_zero(const double* row, std::size_t n) {
  return std::all_of(row, row + n, [](double v) { return v == 0.0; });
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_shapes(const ModelParams& params, const PropagationMatrix& prop, const Matrix& h0) {
  if (params.weights.empty()) throw ShapeError("model has no layers");
  if (h0.rows != prop.nodes()) {
    throw ShapeError("feature matrix has " + std::to_string(h0.rows) + " rows, graph has " +
                     std::to_string(prop.nodes()) + " nodes");
  }
  if (h0.cols != params.input_dim()) {
    throw ShapeError("feature dimension " + std::to_string(h0.cols) +
                     " does not match first layer input " + std::to_string(params.input_dim()));
  }
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const Matrix& w = params.weights[l];
    if (w.cols != params.dim() || (l > 0 && w.rows != params.dim()) ||
        w.data.size() != w.rows * w.cols) {
      throw ShapeError("layer " + std::to_string(l) + " weight shape inconsistent");
    }
  }
}

}  // namespace

void TrainConfig::check() const {
  if (layers < 1) throw ConfigError("layers must be >= 1");
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("adam betas must be in [0,1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("adam epsilon must be positive");
}

std::vector<std::span<double>> ModelParams::blocks() {
  std::vector<std::span<double>> out;
  for (auto& w : weights) out.emplace_back(w.data);
  out.emplace_back(head);
  out.emplace_back(&bias, 1);
  return out;
}

std::vector<std::span<const double>> ModelParams::blocks() const {
  std::vector<std::span<const double>> out;
  for (const auto& w : weights) out.emplace_back(w.data);
  out.emplace_back(head);
  out.emplace_back(&bias, 1);
  return out;
}

ModelParams ModelParams::zeros_like() const {
  ModelParams z;
  for (const auto& w : weights) z.weights.emplace_back(w.rows, w.cols);
  z.head.assign(head.size(), 0.0);
  return z;
}

Matrix input_features(Features kind, std::size_t nodes) {
  if (kind == Features::kOnes) return Matrix(nodes, 1, 1.0);
  Matrix eye(nodes, nodes);
  for (std::size_t r = 0; r < nodes; ++r) eye(r, r) = 1.0;
  return eye;
}

ModelParams init_params(const TrainConfig& cfg, std::size_t input_dim) {
  cfg.check();
  if (input_dim < 1) throw ConfigError("input dimension must be >= 1");
  auto rng = make_engine(cfg.seed, Stream::kInit);
  auto fill = [&rng](std::vector<double>& values, std::size_t fan_in, std::size_t fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (auto& v : values) v = dist(rng);
  };
  ModelParams p;
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    const std::size_t rows = l == 0 ? input_dim : cfg.dim;
    p.weights.emplace_back(rows, cfg.dim);
    fill(p.weights.back().data, rows, cfg.dim);
  }
  p.head.resize(cfg.dim);
  fill(p.head, cfg.dim, 1);
  p.bias = 0.0;
  return p;
}

ForwardCache forward(const ModelParams& params, const PropagationMatrix& prop, const Matrix& h0,
                     const kernels::KernelTable& k) {
  ForwardCache cache;
  forward_into(params, prop, h0, cache, k);
  return cache;
}

void forward_into(const ModelParams& params, const PropagationMatrix& prop, const Matrix& h0,
                  ForwardCache& cache, const kernels::KernelTable& k) {
  check_shapes(params, prop, h0);
  const std::size_t layers = params.layers();
  cache.prop = &prop;
  cache.aggregated.resize(layers);
  cache.pre.resize(layers);
  cache.activations.resize(layers);

  const Matrix* h = &h0;
  for (std::size_t l = 0; l < layers; ++l) {
    spmm(prop.normalized, *h, cache.aggregated[l], k);
    matmul(cache.aggregated[l], params.weights[l], cache.pre[l], k);
    Matrix& act = cache.activations[l];
    act.reset(cache.pre[l].rows, cache.pre[l].cols);
    for (std::size_t i = 0; i < act.data.size(); ++i) {
      const double y = cache.pre[l].data[i];
      act.data[i] = y > 0.0 ? y : std::expm1(y);
    }
    h = &act;
  }

  cache.logits.resize(prop.m);
  cache.predictions.resize(prop.m);
  for (std::size_t i = 0; i < prop.m; ++i) {
    const double* z = h->row(prop.item_row(i));
    cache.logits[i] = k.dot(params.head.data(), z, params.dim()) + params.bias;
    cache.predictions[i] = sigmoid(cache.logits[i]);
  }
}

double mse_loss(std::span<const double> predictions, const GroundTruth& truth,
                std::span<const std::size_t> train_ids) {
  if (train_ids.empty()) throw ValidationError("training set is empty");
  double sum = 0.0;
  for (std::size_t i : train_ids) {
    if (i >= predictions.size() || i >= truth.values.size() || !truth.known[i]) {
      throw ValidationError("training item " + std::to_string(i) + " has no ground truth");
    }
    const double err = truth.values[i] - predictions[i];
    sum += err * err;
  }
  return sum / static_cast<double>(train_ids.size());
}

namespace {

struct BackwardWorkspace {
  Matrix grad_h;
  Matrix grad_pre;
  Matrix grad_agg;
};

ModelParams backward_with(const ModelParams& params, const PropagationMatrix& prop,
                          const ForwardCache& cache, const GroundTruth& truth,
                          std::span<const std::size_t> train_ids, const kernels::KernelTable& k,
                          BackwardWorkspace& ws) {
  const std::size_t layers = params.layers();
  if (cache.prop != &prop || cache.activations.size() != layers ||
      cache.predictions.size() != prop.m) {
    throw ShapeError("forward cache does not match this model and graph");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    if (cache.pre[l].rows != prop.nodes() || cache.pre[l].cols != params.weights[l].cols ||
        cache.aggregated[l].cols != params.weights[l].rows) {
      throw ShapeError("forward cache layer " + std::to_string(l) + " is stale");
    }
  }
  if (train_ids.empty()) throw ValidationError("training set is empty");

  const std::size_t d = params.dim();
  const double scale = 2.0 / static_cast<double>(train_ids.size());
  ModelParams grads = params.zeros_like();

  const Matrix& top = cache.activations.back();
  Matrix& grad_h = ws.grad_h;
  Matrix& grad_pre = ws.grad_pre;
  Matrix& grad_agg = ws.grad_agg;
  grad_h.reset(prop.nodes(), d);
  for (std::size_t i : train_ids) {
    if (i >= prop.m || !truth.known[i]) {
      throw ValidationError("training item " + std::to_string(i) + " has no ground truth");
    }
    const double y = cache.predictions[i];
    const double grad_logit = scale * (y - truth.values[i]) * (y * (1.0 - y));
    grads.bias += grad_logit;
    k.axpy(grad_logit, top.row(prop.item_row(i)), grads.head.data(), d);
    k.axpy(grad_logit, params.head.data(), grad_h.row(prop.item_row(i)), d);
  }

  for (std::size_t l = layers; l-- > 0;) {
    const Matrix& w = params.weights[l];
    grad_pre.reset(grad_h.rows, grad_h.cols);
    k.elu_backward(cache.pre[l].data.data(), cache.activations[l].data.data(), grad_h.data.data(),
                   grad_pre.data.data(), grad_h.data.size());

    // dW = (N H)^T dY, accumulated row by row over nodes with nonzero dY.
    const Matrix& agg = cache.aggregated[l];
    Matrix& grad_w = grads.weights[l];
    for (std::size_t r = 0; r < grad_pre.rows; ++r) {
      const double* gy = grad_pre.row(r);
      if (row_is_zero(gy, grad_pre.cols)) continue;
      const double* xr = agg.row(r);
      for (std::size_t c = 0; c < agg.cols; ++c) {
        if (xr[c] != 0.0) k.axpy(xr[c], gy, grad_w.row(c), grad_w.cols);
      }
    }
    if (l == 0) break;

    // dH(l) = N^T (dY W^T)
    matmul(grad_pre, transpose(w), grad_agg, k);
    spmm(prop.normalized_transposed, grad_agg, grad_h, k);
  }
  return grads;
}

}  // namespace

ModelParams backward(const ModelParams& params, const PropagationMatrix& prop,
                     const ForwardCache& cache, const GroundTruth& truth,
                     std::span<const std::size_t> train_ids, const kernels::KernelTable& k) {
  BackwardWorkspace ws;
  return backward_with(params, prop, cache, truth, train_ids, k, ws);
}

TrainResult train(const PropagationMatrix& prop, const Matrix& h0, const GroundTruth& truth,
                  std::span<const std::size_t> train_ids, const TrainConfig& cfg,
                  const kernels::KernelTable& k) {
  cfg.check();
  if (train_ids.empty()) throw ValidationError("training set is empty");
  if (truth.values.size() != prop.m) throw ShapeError("ground truth length differs from item count");

  TrainResult result{init_params(cfg, h0.cols), {}};
  AdamState state = AdamState::for_params(result.params);
  result.history.reserve(cfg.epochs);
  ForwardCache cache;
  BackwardWorkspace ws;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    forward_into(result.params, prop, h0, cache, k);
    const double loss = mse_loss(cache.predictions, truth, train_ids);
    if (!std::isfinite(loss)) {
      std::ostringstream os;
      os << "non-finite training loss " << loss << " at epoch " << epoch;
      throw TrainingError(os.str());
    }
    result.history.push_back(loss);
    const ModelParams grads = backward_with(result.params, prop, cache, truth, train_ids, k, ws);
    adam_step(result.params, grads, state, cfg, k);
  }
  return result;
}

TrainResult train(const Dataset& dataset, std::span<const std::size_t> train_ids,
                  const TrainConfig& cfg) {
  const PropagationMatrix prop = propagation_matrix(dataset.graph);
  const Matrix h0 = input_features(cfg.features, prop.nodes());
  return train(prop, h0, dataset.truth, train_ids, cfg);
}

std::vector<double> predict(const ModelParams& params, const PropagationMatrix& prop,
                            const Matrix& h0, std::span<const std::size_t> item_ids,
                            const kernels::KernelTable& k) {
  for (std::size_t i : item_ids) {
    if (i >= prop.m) throw ValidationError("unknown item index " + std::to_string(i));
  }
  const ForwardCache cache = forward(params, prop, h0, k);
  std::vector<double> out;
  out.reserve(item_ids.size());
  for (std::size_t i : item_ids) out.push_back(cache.predictions[i]);
  return out;
}

}  // namespace peergrade::gcn
