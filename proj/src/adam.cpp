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

#include <cmath>

#include "peergrade/errors.hpp"
#include "peergrade/gcn.hpp"

namespace peergrade::gcn {

AdamState AdamState::for_params(const ModelParams& params) {
  return AdamState{params.zeros_like(), params.zeros_like(), 0};
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const TrainConfig& cfg, const kernels::KernelTable& k) {
  auto p = params.blocks();
  const auto g = grads.blocks();
  auto m = state.first_moment.blocks();
  auto v = state.second_moment.blocks();
  if (g.size() != p.size() || m.size() != p.size() || v.size() != p.size()) {
    throw ShapeError("adam: parameter block count mismatch");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const kernels::AdamCoefficients coeff{cfg.learning_rate,
                                        cfg.beta1,
                                        cfg.beta2,
                                        cfg.epsilon,
                                        1.0 - std::pow(cfg.beta1, t),
                                        1.0 - std::pow(cfg.beta2, t)};
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (g[b].size() != p[b].size() || m[b].size() != p[b].size() || v[b].size() != p[b].size()) {
      throw ShapeError("adam: block " + std::to_string(b) + " shape mismatch");
    }
    k.adam_update(coeff, g[b].data(), p[b].data(), m[b].data(), v[b].data(), p[b].size());
  }
}

}  // namespace peergrade::gcn
