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

// Monte Carlo cross-validation over items, RMSE scoring, single
// experiments and one-parameter sweeps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peergrade/gcn.hpp"
#include "peergrade/soan.hpp"
#include "peergrade/synthetic.hpp"

namespace peergrade::harness {

struct SplitConfig {
  double train_fraction = 0.1;
  std::size_t n_splits = 4;
  std::uint64_t seed = 0;

  friend bool operator==(const SplitConfig&, const SplitConfig&) = default;
};

enum class Method { kGcnSoan, kAverage, kMedian };

std::string method_name(Method method);
Method parse_method(const std::string& name);

/// n_splits independent uniform partitions of 0..item_count-1 with
/// round(train_fraction * item_count) training items. Both sides sorted.
std::vector<Split> monte_carlo_splits(std::size_t item_count, const SplitConfig& cfg);

/// Same, over the items of `truth` that have a known value.
std::vector<Split> monte_carlo_splits(const GroundTruth& truth, const SplitConfig& cfg);

/// sqrt(mean over ids of (v_i - yhat_i)^2); predictions are indexed by item.
double rmse(std::span<const double> predictions, const GroundTruth& truth,
            std::span<const std::size_t> ids);

struct MethodResult {
  Method method;
  std::vector<double> split_rmse;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single split

  friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

struct ExperimentReport {
  std::string config_json;  // canonical JSON echo of the inputs
  std::size_t n_splits = 0;
  std::vector<MethodResult> methods;
  double wall_clock_seconds = 0.0;  // not part of equality

  const MethodResult& result(Method method) const;

  friend bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
    return a.config_json == b.config_json && a.n_splits == b.n_splits && a.methods == b.methods;
  }
};

struct ExperimentOptions {
  std::vector<Method> methods{Method::kGcnSoan, Method::kAverage, Method::kMedian};
  SplitConfig split;
  gcn::TrainConfig train;
  std::size_t jobs = 1;  // splits evaluated concurrently; results do not depend on it
};

/// Evaluates every method on the test items of each split. GCN-SOAN trains
/// a fresh model per split with seed train.seed + split index.
ExperimentReport run_experiment(const Dataset& dataset, const ExperimentOptions& options,
                                std::string config_json = "{}");

/// Same, on explicit splits.
ExperimentReport run_experiment(const Dataset& dataset, std::span<const Split> splits,
                                const ExperimentOptions& options, std::string config_json = "{}");

ExperimentReport run_experiment(const synthetic::ScenarioConfig& scenario,
                                const ExperimentOptions& options);

/// Swept parameter names: k, alpha, beta, mu, tau, p, layers.
struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  synthetic::ScenarioConfig base;
  ExperimentOptions options;
};

struct SweepPoint {
  double value = 0.0;
  std::optional<ExperimentReport> report;
  std::string error;  // set when the point failed
};

/// Scenario and options for grid point `index` holding `value`.
/// Grid point i offsets every seed by i, except for `layers`, which keeps
/// the dataset and splits fixed so that only depth varies.
std::pair<synthetic::ScenarioConfig, ExperimentOptions> sweep_point_config(const SweepSpec& spec,
                                                                           std::size_t index);

/// One experiment per grid value; a failing point is recorded and the sweep
/// continues. `jobs` grid points run concurrently.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, std::size_t jobs = 1);

/// Long-format table: param,value,method,split,rmse. Each (value, method)
/// contributes one row per split and a row with split = "mean".
std::string sweep_csv(const SweepSpec& spec, std::span<const SweepPoint> points);

/// Runs fn(0..count-1) on up to `jobs` threads; rethrows the first failure
/// by index.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace peergrade::harness
