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

// Test-only helpers: random graph generation and dense reference
// implementations that share no code path with the library's sparse ones.

#include <cmath>
#include <random>
#include <vector>

#include "peergrade/gcn.hpp"
#include "peergrade/soan.hpp"

namespace peergrade::testing {

struct RandomGraphOptions {
  std::size_t max_users = 8;
  std::size_t max_items = 8;
  double assess_p = 0.4;
  double own_p = 0.2;
  double social_p = 0.3;
  bool unit_weights = false;
};

inline SoanGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& o = {}) {
  std::uniform_int_distribution<std::size_t> users(1, o.max_users), items(1, o.max_items);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto weight = [&] {
    if (o.unit_weights) return 1.0;
    const double r = coin(rng);
    return r < 0.1 ? 0.0 : (r < 0.2 ? 1.0 : coin(rng));
  };
  const std::size_t n = users(rng), m = items(rng);
  std::vector<Entry> social, own, assess;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng) < o.social_p) social.push_back({u, v, weight()});
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (coin(rng) < o.assess_p) assess.push_back({u, i, weight()});
      if (coin(rng) < o.own_p) own.push_back({u, i, weight()});
    }
  }
  return graph_from_indices(n, m, social, own, assess);
}

/// Dense (n+m)^2 M and its structural mask, straight from the block definition.
struct DenseM {
  std::size_t size = 0;
  std::vector<double> weight;
  std::vector<bool> structural;
};

inline DenseM dense_m(const SoanGraph& g) {
  DenseM d;
  d.size = g.n + g.m;
  d.weight.assign(d.size * d.size, 0.0);
  d.structural.assign(d.size * d.size, false);
  auto add = [&](std::size_t r, std::size_t c, double w) {
    d.weight[r * d.size + c] += w;
    d.structural[r * d.size + c] = true;
  };
  for (std::size_t r = 0; r < d.size; ++r) add(r, r, 1.0);
  for (const auto& e : g.social) add(e.row, e.col, e.weight);
  for (const auto* rel : {&g.ownership, &g.assessment}) {
    for (const auto& e : *rel) {
      add(e.row, g.n + e.col, e.weight);
      add(g.n + e.col, e.row, e.weight);
    }
  }
  return d;
}

/// Dense D^-1 M, row-major.
inline std::vector<double> dense_normalized(const SoanGraph& g) {
  const DenseM d = dense_m(g);
  std::vector<double> out(d.weight.size());
  for (std::size_t r = 0; r < d.size; ++r) {
    double deg = 0.0;
    for (std::size_t c = 0; c < d.size; ++c) deg += d.structural[r * d.size + c] ? 1.0 : 0.0;
    for (std::size_t c = 0; c < d.size; ++c) out[r * d.size + c] = d.weight[r * d.size + c] / deg;
  }
  return out;
}

/// Naive dense forward pass; returns item predictions.
inline std::vector<double> dense_forward(const gcn::ModelParams& p, const SoanGraph& g,
                                         const gcn::Matrix& h0) {
  const std::size_t nodes = g.n + g.m;
  const auto norm = dense_normalized(g);
  std::vector<double> h = h0.data;
  std::size_t width = h0.cols;
  for (const auto& w : p.weights) {
    std::vector<double> agg(nodes * width, 0.0);
    for (std::size_t r = 0; r < nodes; ++r)
      for (std::size_t c = 0; c < nodes; ++c)
        for (std::size_t f = 0; f < width; ++f) agg[r * width + f] += norm[r * nodes + c] * h[c * width + f];
    std::vector<double> next(nodes * w.cols, 0.0);
    for (std::size_t r = 0; r < nodes; ++r)
      for (std::size_t j = 0; j < w.cols; ++j) {
        double s = 0.0;
        for (std::size_t f = 0; f < width; ++f) s += agg[r * width + f] * w(f, j);
        next[r * w.cols + j] = s > 0.0 ? s : std::exp(s) - 1.0;
      }
    h = std::move(next);
    width = w.cols;
  }
  std::vector<double> pred(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    double z = p.bias;
    for (std::size_t j = 0; j < width; ++j) z += p.head[j] * h[(g.n + i) * width + j];
    pred[i] = 1.0 / (1.0 + std::exp(-z));
  }
  return pred;
}

inline double dense_loss(const gcn::ModelParams& p, const SoanGraph& g, const gcn::Matrix& h0,
                         const GroundTruth& truth, const std::vector<std::size_t>& train) {
  const auto pred = dense_forward(p, g, h0);
  double s = 0.0;
  for (std::size_t i : train) s += (truth.values[i] - pred[i]) * (truth.values[i] - pred[i]);
  return s / static_cast<double>(train.size());
}

}  // namespace peergrade::testing
