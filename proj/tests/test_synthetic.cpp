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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "peergrade/errors.hpp"
#include "peergrade/synthetic.hpp"

using namespace peergrade;
using namespace peergrade::synthetic;

namespace {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E[(X - a)+] for X ~ N(mean, sd).
double excess_above(double mean, double sd, double a) {
  const double z = (mean - a) / sd;
  return (mean - a) * normal_cdf(z) + sd * normal_pdf(z);
}

// E[clamp(X, 0, 1)] - mean for X ~ N(mean, sd): the bias that clamping adds.
double clamp_bias(double mean, double sd) {
  return excess_above(-mean, sd, 0.0) - excess_above(mean, sd, 1.0);
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

Ownership identity_ownership(std::size_t n) {
  Ownership o;
  o.owner_of.resize(n);
  std::iota(o.owner_of.begin(), o.owner_of.end(), std::size_t{0});
  o.item_of = o.owner_of;
  return o;
}

std::vector<std::vector<std::size_t>> graders_by_item(const std::vector<Entry>& grades, std::size_t m) {
  std::vector<std::vector<std::size_t>> out(m);
  for (const auto& e : grades) out[e.col].push_back(e.row);
  return out;
}

}  // namespace

TEST_CASE("gen_ground_truth") {
  Engine rng(1);
  SUBCASE("degenerate mixture") {
    MixtureConfig cfg;
    cfg.pi[0] = 0.0;
    cfg.pi[1] = 1.0;
    cfg.sigma[0] = cfg.sigma[1] = 0.0;
    const auto t = gen_ground_truth(100, cfg, rng);
    for (double v : t.values) CHECK(v == 0.7);
    CHECK(t.known_items().size() == 100);
  }
  SUBCASE("default mixture mean") {
    // Quadrature oracle for the clamped mixture mean.
    const MixtureConfig cfg;
    double clamped_mean = 0.0;
    for (int c = 0; c < 2; ++c) clamped_mean += cfg.pi[c] * (cfg.mu[c] + clamp_bias(cfg.mu[c], cfg.sigma[c]));
    CHECK(std::abs(clamped_mean - 0.62) < 1e-3);

    const auto t = gen_ground_truth(10000, cfg, rng);
    const double mean = std::accumulate(t.values.begin(), t.values.end(), 0.0) / 10000.0;
    CHECK(std::abs(mean - 0.62) < 0.01);
  }
  SUBCASE("clamped to the unit interval") {
    MixtureConfig cfg;
    cfg.mu[0] = 0.0;
    cfg.mu[1] = 1.0;
    const auto t = gen_ground_truth(5000, cfg, rng);
    CHECK(std::all_of(t.values.begin(), t.values.end(), [](double v) { return v >= 0.0 && v <= 1.0; }));
    CHECK(std::count(t.values.begin(), t.values.end(), 0.0) > 0);
  }
  SUBCASE("invalid config") {
    MixtureConfig cfg;
    cfg.pi[0] = 0.5;
    CHECK_THROWS_AS(gen_ground_truth(1, cfg, rng), ConfigError);
    MixtureConfig neg;
    neg.sigma[1] = -0.1;
    CHECK_THROWS_AS(gen_ground_truth(1, neg, rng), ConfigError);
  }
}

TEST_CASE("gen_ownership_one_to_one") {
  Engine rng(2);
  const auto one = gen_ownership_one_to_one(1, 1, rng);
  CHECK(one.owner_of == std::vector<std::size_t>{0});

  const auto three = gen_ownership_one_to_one(3, 3, rng);
  std::vector<int> row(3, 0), col(3, 0);
  for (std::size_t i = 0; i < 3; ++i) {
    ++col[i];
    ++row[three.owner_of[i]];
    CHECK(three.item_of[three.owner_of[i]] == i);
  }
  CHECK(row == std::vector<int>{1, 1, 1});
  CHECK(col == std::vector<int>{1, 1, 1});

  CHECK_THROWS_AS(gen_ownership_one_to_one(3, 4, rng), ValidationError);
}

TEST_CASE("gen_social_er") {
  Engine rng(3);
  CHECK(gen_social_er({50, 0.0}, rng).empty());
  CHECK(gen_social_er({50, 1.0}, rng).size() == 50 * 49 / 2);

  const auto pairs = gen_social_er({500, 0.05}, rng);
  const double trials = 500.0 * 499.0 / 2.0;
  const double mean = 0.05 * trials;
  const double sd = std::sqrt(trials * 0.05 * 0.95);
  CHECK(std::abs(static_cast<double>(pairs.size()) - mean) < 4.0 * sd);
  for (const auto& e : pairs) CHECK(e.row < e.col);

  // Stored symmetric, zero diagonal.
  const auto g = graph_from_indices(500, 1, pairs, {}, {});
  CHECK_FALSE(validate(g).fatal());
}

TEST_CASE("gen_social_homophily") {
  const auto truth = GroundTruth::all_known({0.30, 0.35, 0.90});
  Ownership o;
  o.owner_of = {2, 0, 1};
  o.item_of = {1, 2, 0};

  const auto tight = gen_social_homophily(truth, o, {0.1});
  REQUIRE(tight.size() == 1);
  CHECK(tight[0] == Entry{0, 2, 1.0});  // owners of items 0 and 1
  CHECK(gen_social_homophily(truth, o, {0.1}) == tight);

  CHECK(gen_social_homophily(truth, o, {1.0}).size() == 3);
  CHECK(gen_social_homophily(truth, o, {0.0}).empty());

  Ownership broken = o;
  broken.item_of.pop_back();
  CHECK_THROWS_AS(gen_social_homophily(truth, broken, {0.1}), ValidationError);
}

TEST_CASE("gen_assess_strategic") {
  const std::size_t n = 20;
  Engine rng(4);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 0.05 * static_cast<double>(i);
  const auto truth = GroundTruth::all_known(v);
  const auto owners = identity_ownership(n);

  SUBCASE("complete social network: every grade is 1") {
    Engine srng(0);
    const auto complete = gen_social_er({n, 1.0}, srng);
    for (const auto& e : gen_assess_strategic(truth, owners, complete, {3, 0.25}, rng)) {
      CHECK(e.weight == 1.0);
    }
  }
  SUBCASE("no friends and no noise: grades equal the truth") {
    for (const auto& e : gen_assess_strategic(truth, owners, {}, {3, 0.0}, rng)) {
      CHECK(e.weight == v[e.col]);
    }
  }
  SUBCASE("friends of the owner collude") {
    // User 1 is a friend of user 0, who owns item 0.
    const std::vector<Entry> social{{0, 1, 1.0}};
    for (int rep = 0; rep < 50; ++rep) {
      for (const auto& e : gen_assess_strategic(truth, owners, social, {n - 1, 0.0}, rng)) {
        if (e.col == 0 && e.row == 1) {
          CHECK(e.weight == 1.0);
        } else if (e.col == 1 && e.row == 0) {
          CHECK(e.weight == 1.0);
        } else {
          CHECK(e.weight == v[e.col]);
        }
      }
    }
  }
  SUBCASE("too many graders") {
    CHECK_THROWS_AS(gen_assess_strategic(truth, owners, {}, {n, 0.25}, rng), ValidationError);
  }
}

TEST_CASE("strategic noise is unbiased up to clamping") {
  ScenarioConfig cfg = ScenarioConfig::strategic_preset();
  cfg.n = cfg.m = 2000;
  cfg.social = SocialKind::kNone;
  const Dataset d = build_scenario(cfg);
  double residual = 0.0, expected = 0.0;
  for (const auto& e : d.graph.assessment) {
    residual += e.weight - d.truth.values[e.col];
    expected += clamp_bias(d.truth.values[e.col], cfg.sigma_h);
  }
  const double count = static_cast<double>(d.graph.assessment.size());
  CHECK(count == 6000);
  CHECK(std::abs(residual / count - expected / count) < 0.01);
}

TEST_CASE("gen_assess_bias_reliability") {
  Engine rng(5);
  SUBCASE("zero-variance graders return the shifted truth") {
    const auto truth = GroundTruth::all_known({1.0, 1.0, 1.0, 0.2});
    const auto owners = identity_ownership(4);
    const auto grades = gen_assess_bias_reliability(truth, owners, {2, -0.3, 1.0, 0.25}, rng);
    for (const auto& e : grades) {
      if (truth.values[owners.item_of[e.row]] == 1.0) {
        CHECK(e.weight == std::clamp(truth.values[e.col] - 0.3, 0.0, 1.0));
      }
    }
  }
  SUBCASE("no noise, no bias") {
    const auto truth = GroundTruth::all_known({0.1, 0.5, 0.9, 0.3});
    for (const auto& e : gen_assess_bias_reliability(truth, identity_ownership(4), {3, 0, 0, 0}, rng)) {
      CHECK(e.weight == truth.values[e.col]);
    }
  }
  SUBCASE("generous bias clamps at 1") {
    const auto truth = GroundTruth::all_known({0.9, 0.9, 0.9});
    for (const auto& e : gen_assess_bias_reliability(truth, identity_ownership(3), {2, 0.3, 0, 0}, rng)) {
      CHECK(e.weight == 1.0);
    }
  }
  SUBCASE("negative standard deviation") {
    const auto truth = GroundTruth::all_known({0.9, 0.1, 0.5});
    CHECK_THROWS_AS(gen_assess_bias_reliability(truth, identity_ownership(3), {1, 0, 2.0, 0.25}, rng),
                    ConfigError);
  }
}

TEST_CASE("build_scenario presets") {
  const Dataset d = build_scenario(ScenarioConfig::default_preset());
  CHECK(d.graph.n == 500);
  CHECK(d.graph.m == 500);
  CHECK(d.graph.assessment.size() == 1500);
  CHECK(d.graph.ownership.size() == 500);
  CHECK(d.graph.social.empty());
  CHECK(validate(d.graph).empty());

  const Dataset s = build_scenario(ScenarioConfig::strategic_preset());
  const double trials = 500.0 * 499.0 / 2.0;
  CHECK(std::abs(static_cast<double>(s.graph.social_edge_count()) - 0.05 * trials) <
        4.0 * std::sqrt(trials * 0.05 * 0.95));

  ScenarioConfig one = ScenarioConfig::default_preset();
  one.k = 1;
  one.n = one.m = 100;
  const Dataset k1 = build_scenario(one);
  for (const auto& graders : graders_by_item(k1.graph.assessment, 100)) CHECK(graders.size() == 1);
}

TEST_CASE("generated datasets satisfy the scenario invariants") {
  for (auto base : {ScenarioConfig::default_preset(), ScenarioConfig::strategic_preset()}) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      ScenarioConfig cfg = base;
      cfg.n = cfg.m = 60;
      cfg.seed = seed;
      cfg.k = 1 + seed * 2;
      cfg.er_p = 0.2;
      if (seed == 2) {
        cfg.social = SocialKind::kHomophily;
        cfg.tau = 0.05;
      }
      const Dataset d = build_scenario(cfg);
      CHECK_FALSE(validate(d.graph).fatal());
      const Ownership owners = ownership_from_graph(d.graph);
      const auto graders = graders_by_item(d.graph.assessment, cfg.m);
      for (std::size_t i = 0; i < cfg.m; ++i) {
        CHECK(graders[i].size() == cfg.k);
        CHECK(std::find(graders[i].begin(), graders[i].end(), owners.owner_of[i]) == graders[i].end());
      }
      for (const auto& e : d.graph.assessment) CHECK((e.weight >= 0.0 && e.weight <= 1.0));
      for (double v : d.truth.values) CHECK((v >= 0.0 && v <= 1.0));
      CHECK(build_scenario(cfg) == d);
    }
  }
}

TEST_CASE("strategic without friends and bias-reliability agree in distribution") {
  ScenarioConfig strategic = ScenarioConfig::strategic_preset();
  strategic.social = SocialKind::kNone;
  strategic.n = strategic.m = 2000;
  ScenarioConfig bias = ScenarioConfig::default_preset();
  bias.n = bias.m = 2000;
  bias.seed = 99;
  auto residuals = [](const Dataset& d) {
    std::vector<double> r;
    for (const auto& e : d.graph.assessment) r.push_back(e.weight - d.truth.values[e.col]);
    return r;
  };
  const auto a = residuals(build_scenario(strategic));
  const auto b = residuals(build_scenario(bias));
  // KS critical value at the 0.001 level for two samples of 6000.
  const double critical = 1.95 * std::sqrt(2.0 / 6000.0);
  CHECK(ks_statistic(a, b) < critical);
  CHECK(ks_statistic(a, std::vector<double>(a.size(), 0.0)) > critical);
}
