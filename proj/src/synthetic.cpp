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

#include "peergrade/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "peergrade/errors.hpp"

namespace peergrade::synthetic {
namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// k distinct users drawn uniformly from all users except `owner`, ascending.
std::vector<std::size_t> sample_graders(std::size_t n, std::size_t owner, std::size_t k,
                                        Engine& rng, std::vector<std::size_t>& scratch) {
  scratch.clear();
  for (std::size_t u = 0; u < n; ++u) {
    if (u != owner) scratch.push_back(u);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::uniform_int_distribution<std::size_t> pick(j, scratch.size() - 1);
    std::swap(scratch[j], scratch[pick(rng)]);
  }
  std::vector<std::size_t> chosen(scratch.begin(), scratch.begin() + static_cast<long>(k));
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

void check_grader_count(std::size_t k, std::size_t n) {
  if (k == 0 || k + 1 > n) {
    throw ValidationError("graders per item k=" + std::to_string(k) + " must be in [1, n-1] with n=" +
                          std::to_string(n));
  }
}

void check_ownership(const GroundTruth& truth, const Ownership& owners) {
  if (owners.owner_of.size() != truth.values.size() ||
      owners.item_of.size() != owners.owner_of.size()) {
    throw ValidationError("ownership must be one-to-one between users and items");
  }
}

}  // namespace

void MixtureConfig::check() const {
  for (int c = 0; c < 2; ++c) {
    if (!(pi[c] >= 0.0) || !(sigma[c] >= 0.0) || !(mu[c] >= 0.0 && mu[c] <= 1.0)) {
      throw ConfigError("mixture component " + std::to_string(c + 1) +
                        " needs pi >= 0, sigma >= 0, mu in [0,1]");
    }
  }
  if (std::abs(pi[0] + pi[1] - 1.0) > 1e-12) throw ConfigError("mixture weights must sum to 1");
}

ScenarioConfig ScenarioConfig::default_preset() { return ScenarioConfig{}; }

ScenarioConfig ScenarioConfig::strategic_preset() {
  ScenarioConfig cfg;
  cfg.social = SocialKind::kErdosRenyi;
  cfg.er_p = 0.05;
  cfg.assessment = AssessmentKind::kStrategic;
  cfg.sigma_h = 0.25;
  return cfg;
}

GroundTruth gen_ground_truth(std::size_t m, const MixtureConfig& cfg, Engine& rng) {
  cfg.check();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(m);
  for (auto& v : values) {
    const int c = coin(rng) < cfg.pi[0] ? 0 : 1;
    v = clamp_unit(cfg.mu[c] + cfg.sigma[c] * normal(rng));
  }
  return GroundTruth::all_known(std::move(values));
}

Ownership gen_ownership_one_to_one(std::size_t n, std::size_t m, Engine& rng) {
  if (n != m) {
    throw ValidationError("one-to-one ownership needs n == m (got n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
  }
  Ownership o;
  o.owner_of.resize(m);
  for (std::size_t i = 0; i < m; ++i) o.owner_of[i] = i;
  std::shuffle(o.owner_of.begin(), o.owner_of.end(), rng);
  o.item_of.resize(n);
  for (std::size_t i = 0; i < m; ++i) o.item_of[o.owner_of[i]] = i;
  return o;
}

std::vector<Entry> gen_social_er(const ErConfig& cfg, Engine& rng) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ConfigError("ER probability must be in [0,1]");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Entry> pairs;
  for (std::size_t u = 0; u < cfg.n; ++u) {
    for (std::size_t v = u + 1; v < cfg.n; ++v) {
      if (coin(rng) < cfg.p) pairs.push_back({u, v, 1.0});
    }
  }
  return pairs;
}

std::vector<Entry> gen_social_homophily(const GroundTruth& truth, const Ownership& owners,
                                        const HomophilyConfig& cfg) {
  check_ownership(truth, owners);
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) throw ConfigError("homophily tau must be in [0,1]");
  const std::size_t n = owners.item_of.size();
  std::vector<Entry> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double gap = std::abs(truth.values[owners.item_of[j]] - truth.values[owners.item_of[k]]);
      if (gap <= cfg.tau) pairs.push_back({j, k, 1.0});
    }
  }
  return pairs;
}

std::vector<Entry> gen_assess_strategic(const GroundTruth& truth, const Ownership& owners,
                                        const std::vector<Entry>& social_pairs,
                                        const StrategicConfig& cfg, Engine& rng) {
  check_ownership(truth, owners);
  const std::size_t n = owners.item_of.size();
  check_grader_count(cfg.k, n);
  if (!(cfg.sigma_h >= 0.0)) throw ConfigError("sigma_H must be non-negative");

  std::vector<std::pair<std::size_t, std::size_t>> friends;
  friends.reserve(social_pairs.size());
  for (const auto& e : social_pairs) {
    if (e.weight != 0.0) friends.emplace_back(std::min(e.row, e.col), std::max(e.row, e.col));
  }
  std::sort(friends.begin(), friends.end());
  auto are_friends = [&](std::size_t a, std::size_t b) {
    return std::binary_search(friends.begin(), friends.end(),
                              std::make_pair(std::min(a, b), std::max(a, b)));
  };

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::size_t> scratch;
  std::vector<Entry> grades;
  grades.reserve(truth.values.size() * cfg.k);
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const std::size_t owner = owners.owner_of[i];
    for (std::size_t u : sample_graders(n, owner, cfg.k, rng, scratch)) {
      const double grade =
          are_friends(u, owner) ? 1.0 : clamp_unit(truth.values[i] + cfg.sigma_h * normal(rng));
      grades.push_back({u, i, grade});
    }
  }
  return grades;
}

std::vector<Entry> gen_assess_bias_reliability(const GroundTruth& truth, const Ownership& owners,
                                               const BiasReliabilityConfig& cfg, Engine& rng) {
  check_ownership(truth, owners);
  const std::size_t n = owners.item_of.size();
  check_grader_count(cfg.k, n);
  if (!(cfg.alpha >= -1.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha must be in [-1,1]");
  if (!(cfg.sigma_max >= 0.0)) throw ConfigError("sigma_max must be non-negative");

  std::vector<double> grader_sigma(n);
  for (std::size_t u = 0; u < n; ++u) {
    grader_sigma[u] = cfg.sigma_max * (1.0 - cfg.beta * truth.values[owners.item_of[u]]);
    if (!(grader_sigma[u] >= 0.0)) {
      throw ConfigError("negative grading standard deviation for user " + std::to_string(u) +
                        " (sigma_max * (1 - beta * v) < 0)");
    }
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::size_t> scratch;
  std::vector<Entry> grades;
  grades.reserve(truth.values.size() * cfg.k);
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const double mean = truth.values[i] + cfg.alpha;
    for (std::size_t u : sample_graders(n, owners.owner_of[i], cfg.k, rng, scratch)) {
      grades.push_back({u, i, clamp_unit(mean + grader_sigma[u] * normal(rng))});
    }
  }
  return grades;
}

Ownership ownership_from_graph(const SoanGraph& graph) {
  if (graph.n != graph.m) throw ValidationError("one-to-one ownership needs n == m");
  Ownership o;
  o.owner_of.assign(graph.m, graph.n);
  o.item_of.assign(graph.n, graph.m);
  for (const auto& e : graph.ownership) {
    if (e.weight != 1.0 || o.owner_of[e.col] != graph.n || o.item_of[e.row] != graph.m) {
      throw ValidationError("ownership is not one-to-one (user " + graph.user_ids[e.row] +
                            ", item " + graph.item_ids[e.col] + ")");
    }
    o.owner_of[e.col] = e.row;
    o.item_of[e.row] = e.col;
  }
  for (std::size_t u = 0; u < graph.n; ++u) {
    if (o.item_of[u] == graph.m) {
      throw ValidationError("user " + graph.user_ids[u] + " owns no item");
    }
  }
  return o;
}

Dataset build_scenario(const ScenarioConfig& cfg) {
  auto truth_rng = make_engine(cfg.seed, Stream::kTruth);
  auto owner_rng = make_engine(cfg.seed, Stream::kOwnership);
  auto social_rng = make_engine(cfg.seed, Stream::kSocial);
  auto grade_rng = make_engine(cfg.seed, Stream::kAssessment);

  GroundTruth truth = gen_ground_truth(cfg.m, cfg.mixture, truth_rng);
  Ownership owners = gen_ownership_one_to_one(cfg.n, cfg.m, owner_rng);

  std::vector<Entry> social;
  switch (cfg.social) {
    case SocialKind::kNone:
      break;
    case SocialKind::kErdosRenyi:
      social = gen_social_er({cfg.n, cfg.er_p}, social_rng);
      break;
    case SocialKind::kHomophily:
      social = gen_social_homophily(truth, owners, {cfg.tau});
      break;
  }

  std::vector<Entry> grades =
      cfg.assessment == AssessmentKind::kStrategic
          ? gen_assess_strategic(truth, owners, social, {cfg.k, cfg.sigma_h}, grade_rng)
          : gen_assess_bias_reliability(truth, owners,
                                        {cfg.k, cfg.alpha, cfg.beta, cfg.sigma_max}, grade_rng);

  std::vector<Entry> ownership;
  ownership.reserve(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) ownership.push_back({owners.owner_of[i], i, 1.0});

  Dataset d;
  d.graph = graph_from_indices(cfg.n, cfg.m, std::move(social), std::move(ownership),
                               std::move(grades));
  d.truth = std::move(truth);
  return d;
}

}  // namespace peergrade::synthetic
