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

// Synthetic peer-assessment scenarios: two-component Gaussian ground
// truth, one-to-one ownership, Erdos-Renyi or homophily social networks,
// and strategic or bias-reliability grading. Normal draws are clamped to
// [0,1].

#include <cstddef>
#include <cstdint>
#include <vector>

#include "peergrade/rng.hpp"
#include "peergrade/soan.hpp"

namespace peergrade::synthetic {

struct MixtureConfig {
  double pi[2] = {0.2, 0.8};
  double mu[2] = {0.3, 0.7};
  double sigma[2] = {0.1, 0.1};

  void check() const;
  friend bool operator==(const MixtureConfig&, const MixtureConfig&) = default;
};

struct ErConfig {
  std::size_t n = 500;
  double p = 0.05;
};

struct HomophilyConfig {
  double tau = 0.1;
};

struct StrategicConfig {
  std::size_t k = 3;
  double sigma_h = 0.25;
};

struct BiasReliabilityConfig {
  std::size_t k = 3;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma_max = 0.25;
};

enum class SocialKind { kNone, kErdosRenyi, kHomophily };
enum class AssessmentKind { kStrategic, kBiasReliability };

struct ScenarioConfig {
  std::size_t n = 500;
  std::size_t m = 500;
  std::uint64_t seed = 0;
  MixtureConfig mixture;
  SocialKind social = SocialKind::kNone;
  double er_p = 0.05;
  double tau = 0.1;
  AssessmentKind assessment = AssessmentKind::kBiasReliability;
  std::size_t k = 3;
  double sigma_h = 0.25;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma_max = 0.25;

  /// n = m = 500, bias-reliability grading, no social network.
  static ScenarioConfig default_preset();
  /// Strategic grading with sigma_H = 0.25 over an ER(500, 0.05) network.
  static ScenarioConfig strategic_preset();

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// One-to-one ownership as a permutation: owner_of[item] = user.
struct Ownership {
  std::vector<std::size_t> owner_of;
  std::vector<std::size_t> item_of;  // inverse: item owned by each user
};

GroundTruth gen_ground_truth(std::size_t m, const MixtureConfig& cfg, Engine& rng);

Ownership gen_ownership_one_to_one(std::size_t n, std::size_t m, Engine& rng);

/// Social pairs (u < v) of an Erdos-Renyi graph, weight 1.
std::vector<Entry> gen_social_er(const ErConfig& cfg, Engine& rng);

/// Pairs of users whose owned items' true values differ by at most tau.
std::vector<Entry> gen_social_homophily(const GroundTruth& truth, const Ownership& owners,
                                        const HomophilyConfig& cfg);

/// `social_pairs` as returned by the social generators (one entry per pair).
std::vector<Entry> gen_assess_strategic(const GroundTruth& truth, const Ownership& owners,
                                        const std::vector<Entry>& social_pairs,
                                        const StrategicConfig& cfg, Engine& rng);

std::vector<Entry> gen_assess_bias_reliability(const GroundTruth& truth, const Ownership& owners,
                                               const BiasReliabilityConfig& cfg, Engine& rng);

/// Checks that a graph's ownership relation is one-to-one with unit weights
/// and returns it in permutation form.
Ownership ownership_from_graph(const SoanGraph& graph);

/// Composes the generators. Substreams are derived from cfg.seed in the
/// order truth, ownership, social, assessment.
Dataset build_scenario(const ScenarioConfig& cfg);

}  // namespace peergrade::synthetic
