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

#include "peergrade/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "peergrade/baselines.hpp"
#include "peergrade/errors.hpp"
#include "peergrade/io.hpp"
#include "peergrade/rng.hpp"

namespace peergrade::harness {
namespace {

MethodResult summarize(Method method, std::vector<double> split_rmse) {
  MethodResult r{method, std::move(split_rmse), 0.0, 0.0};
  const double count = static_cast<double>(r.split_rmse.size());
  r.mean = std::accumulate(r.split_rmse.begin(), r.split_rmse.end(), 0.0) / count;
  if (r.split_rmse.size() > 1) {
    double ss = 0.0;
    for (double x : r.split_rmse) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / (count - 1.0));
  }
  return r;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::kGcnSoan:
      return "gcn-soan";
    case Method::kAverage:
      return "average";
    case Method::kMedian:
      return "median";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kGcnSoan, Method::kAverage, Method::kMedian}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + name + "' (expected gcn-soan, average or median)");
}

std::vector<Split> monte_carlo_splits(std::size_t item_count, const SplitConfig& cfg) {
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw ValidationError("train fraction must be in (0,1)");
  }
  if (cfg.n_splits < 1) throw ValidationError("n_splits must be >= 1");
  const auto train_size =
      static_cast<std::size_t>(std::llround(cfg.train_fraction * static_cast<double>(item_count)));
  if (train_size < 1 || train_size >= item_count) {
    throw ValidationError("split of " + std::to_string(item_count) + " items with fraction " +
                          io::format_double(cfg.train_fraction) +
                          " leaves an empty train or test set");
  }
  std::vector<Split> splits;
  splits.reserve(cfg.n_splits);
  std::vector<std::size_t> order(item_count);
  for (std::size_t s = 0; s < cfg.n_splits; ++s) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = make_engine(cfg.seed, Stream::kSplit, s);
    std::shuffle(order.begin(), order.end(), rng);
    Split split;
    split.train.assign(order.begin(), order.begin() + static_cast<long>(train_size));
    split.test.assign(order.begin() + static_cast<long>(train_size), order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    splits.push_back(std::move(split));
  }
  return splits;
}

std::vector<Split> monte_carlo_splits(const GroundTruth& truth, const SplitConfig& cfg) {
  const auto known = truth.known_items();
  auto splits = monte_carlo_splits(known.size(), cfg);
  for (auto& split : splits) {
    for (auto* side : {&split.train, &split.test}) {
      for (auto& id : *side) id = known[id];
    }
  }
  return splits;
}

double rmse(std::span<const double> predictions, const GroundTruth& truth,
            std::span<const std::size_t> ids) {
  if (ids.empty()) throw ValidationError("rmse over an empty item set");
  double sum = 0.0;
  for (std::size_t i : ids) {
    if (i >= predictions.size() || i >= truth.values.size() || !truth.known[i]) {
      throw ValidationError("rmse: item " + std::to_string(i) + " has no ground truth");
    }
    const double err = truth.values[i] - predictions[i];
    sum += err * err;
  }
  return std::sqrt(sum / static_cast<double>(ids.size()));
}

const MethodResult& ExperimentReport::result(Method method) const {
  for (const auto& r : methods) {
    if (r.method == method) return r;
  }
  throw ValidationError("report has no results for " + method_name(method));
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::mutex mu;
    std::size_t next = 0;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= count) return;
            i = next++;
          }
          run(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ExperimentReport run_experiment(const Dataset& dataset, std::span<const Split> splits,
                                const ExperimentOptions& options, std::string config_json) {
  if (options.methods.empty()) throw ConfigError("no methods requested");
  if (splits.empty()) throw ConfigError("no splits");
  for (const auto& split : splits) {
    check_split(split, dataset.truth);
    if (split.test.empty()) throw ValidationError("split has an empty test set");
  }
  const auto started = std::chrono::steady_clock::now();

  const bool need_gcn = std::find(options.methods.begin(), options.methods.end(),
                                  Method::kGcnSoan) != options.methods.end();
  std::optional<PropagationMatrix> prop;
  gcn::Matrix h0;
  if (need_gcn) {
    options.train.check();
    prop = propagation_matrix(dataset.graph);
    h0 = gcn::input_features(options.train.features, prop->nodes());
  }

  // rmse[method][split]
  std::vector<std::vector<double>> scores(options.methods.size(),
                                          std::vector<double>(splits.size(), 0.0));
  parallel_for(splits.size(), options.jobs, [&](std::size_t s) {
    const Split& split = splits[s];
    std::vector<double> predictions(dataset.graph.m, std::nan(""));
    for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
      std::vector<double> test_pred;
      switch (options.methods[mi]) {
        case Method::kGcnSoan: {
          gcn::TrainConfig cfg = options.train;
          cfg.seed = options.train.seed + s;
          const auto trained = gcn::train(*prop, h0, dataset.truth, split.train, cfg);
          test_pred = gcn::predict(trained.params, *prop, h0, split.test);
          break;
        }
        case Method::kAverage:
          test_pred = baselines::average_predict(dataset.graph, split.test);
          break;
        case Method::kMedian:
          test_pred = baselines::median_predict(dataset.graph, split.test);
          break;
      }
      for (std::size_t t = 0; t < split.test.size(); ++t) predictions[split.test[t]] = test_pred[t];
      scores[mi][s] = rmse(predictions, dataset.truth, split.test);
    }
  });

  ExperimentReport report;
  report.config_json = std::move(config_json);
  report.n_splits = splits.size();
  for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
    report.methods.push_back(summarize(options.methods[mi], std::move(scores[mi])));
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ExperimentReport run_experiment(const Dataset& dataset, const ExperimentOptions& options,
                                std::string config_json) {
  const auto splits = monte_carlo_splits(dataset.truth, options.split);
  return run_experiment(dataset, splits, options, std::move(config_json));
}

ExperimentReport run_experiment(const synthetic::ScenarioConfig& scenario,
                                const ExperimentOptions& options) {
  io::Json echo;
  echo["scenario"] = io::scenario_to_json(scenario);
  echo["split"] = io::split_config_to_json(options.split);
  echo["train"] = io::train_config_to_json(options.train);
  io::Json methods = io::Json::array();
  for (Method m : options.methods) methods.push_back(method_name(m));
  echo["methods"] = methods;
  const Dataset dataset = synthetic::build_scenario(scenario);
  return run_experiment(dataset, options, echo.dump());
}

std::pair<synthetic::ScenarioConfig, ExperimentOptions> sweep_point_config(const SweepSpec& spec,
                                                                           std::size_t index) {
  synthetic::ScenarioConfig scenario = spec.base;
  ExperimentOptions options = spec.options;
  options.jobs = 1;
  const double value = spec.values.at(index);
  const std::string& p = spec.parameter;
  if (p == "k") {
    if (!(value >= 1.0) || value != std::floor(value)) throw ConfigError("k must be a positive integer");
    scenario.k = static_cast<std::size_t>(value);
  } else if (p == "alpha") {
    scenario.alpha = value;
  } else if (p == "beta") {
    scenario.beta = value;
  } else if (p == "mu") {
    // Unimodal ground truth centred at the swept mean.
    scenario.mixture.mu[0] = scenario.mixture.mu[1] = value;
    scenario.mixture.sigma[0] = scenario.mixture.sigma[1] = 0.15;
  } else if (p == "tau") {
    scenario.social = synthetic::SocialKind::kHomophily;
    scenario.tau = value;
  } else if (p == "p") {
    scenario.social = synthetic::SocialKind::kErdosRenyi;
    scenario.er_p = value;
  } else if (p == "layers") {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw ConfigError("layers must be a positive integer");
    }
    options.train.layers = static_cast<std::size_t>(value);
    return {scenario, options};
  } else {
    throw ConfigError("unknown sweep parameter '" + p + "'");
  }
  scenario.seed = spec.base.seed + index;
  options.split.seed = spec.options.split.seed + index;
  options.train.seed = spec.options.train.seed + index;
  return {scenario, options};
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, std::size_t jobs) {
  if (spec.values.empty()) throw ConfigError("sweep grid is empty");
  std::vector<SweepPoint> points(spec.values.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    points[i].value = spec.values[i];
    try {
      auto [scenario, options] = sweep_point_config(spec, i);
      points[i].report = run_experiment(scenario, options);
    } catch (const std::exception& e) {
      points[i].error = e.what();
    }
  });
  return points;
}

std::string sweep_csv(const SweepSpec& spec, std::span<const SweepPoint> points) {
  std::string out = "param,value,method,split,rmse\n";
  for (const auto& point : points) {
    const std::string prefix = spec.parameter + "," + io::format_double(point.value) + ",";
    if (!point.report) {
      for (Method m : spec.options.methods) out += prefix + method_name(m) + ",error,\n";
      continue;
    }
    for (const auto& r : point.report->methods) {
      for (std::size_t s = 0; s < r.split_rmse.size(); ++s) {
        out += prefix + method_name(r.method) + "," + std::to_string(s) + "," +
               io::format_double(r.split_rmse[s]) + "\n";
      }
      out += prefix + method_name(r.method) + ",mean," + io::format_double(r.mean) + "\n";
    }
  }
  return out;
}

}  // namespace peergrade::harness
