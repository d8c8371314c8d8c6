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

#include "peergrade/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "peergrade/baselines.hpp"
#include "peergrade/errors.hpp"
#include "peergrade/gcn.hpp"
#include "peergrade/harness.hpp"
#include "peergrade/io.hpp"
#include "peergrade/kernels.hpp"
#include "peergrade/synthetic.hpp"

namespace peergrade::cli {
namespace {

using io::Json;

std::size_t resolve_jobs(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("PEERGRADE_JOBS"); env != nullptr && *env != '\0') {
    try {
      const auto jobs = std::stoul(env);
      if (jobs > 0) return jobs;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("PEERGRADE_JOBS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

double parse_scale(const std::string& text) {
  const std::string prefix = "max=";
  if (text.rfind(prefix, 0) != 0) throw ConfigError("--scale expects max=<value>, got '" + text + "'");
  const double value = io::parse_double(text.substr(prefix.size()));
  if (!(value > 0.0)) throw ConfigError("--scale maximum must be positive");
  return value;
}

Json summary(const Dataset& d) {
  return {{"users", d.graph.n},
          {"items", d.graph.m},
          {"assessments", d.graph.assessment.size()},
          {"ownerships", d.graph.ownership.size()},
          {"social_pairs", d.graph.social_edge_count()},
          {"known_truth", d.truth.known_items().size()}};
}

void warn_report(const Dataset& d, std::ostream& err) {
  const auto report = validate(d.graph);
  for (const auto& issue : report.issues) err << "warning: " << issue.message << "\n";
}

std::string rmse_csv(const std::string& method, const std::vector<double>& per_split) {
  std::string out;
  double sum = 0.0;
  for (std::size_t s = 0; s < per_split.size(); ++s) {
    out += method + "," + std::to_string(s) + "," + io::format_double(per_split[s]) + "\n";
    sum += per_split[s];
  }
  out += method + ",mean," + io::format_double(sum / static_cast<double>(per_split.size())) + "\n";
  return out;
}

struct Options {
  std::string config, out, data, train_config, model, split, method, spec, from, scale;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

int run_generate(const Options& o, CLI::App& cmd, std::ostream& out, std::ostream& err) {
  auto cfg = io::load_config(o.config);
  if (cmd.count("--seed") > 0) cfg.seed = o.seed;
  const Dataset d = synthetic::build_scenario(cfg);
  io::save_dataset(d, o.out);
  Json j = summary(d);
  j["seed"] = cfg.seed;
  out << io::canonical(j);
  err << "wrote " << o.out << "\n";
  return kOk;
}

int run_train(const Options& o, CLI::App& cmd, std::ostream& out, std::ostream& err) {
  const Dataset d = io::load_dataset(o.data);
  Json doc = io::read_json(o.train_config);
  Json split_doc = {{"schema_version", io::kSchemaVersion}};
  if (doc.is_object() && doc.contains("split")) {
    split_doc = doc["split"];
    if (split_doc.is_object() && !split_doc.contains("schema_version")) {
      split_doc["schema_version"] = io::kSchemaVersion;
    }
    doc.erase("split");
  }
  auto cfg = io::train_config_from_json(doc);
  if (cmd.count("--seed") > 0) cfg.seed = o.seed;
  const auto splits = io::splits_from_json(split_doc, d);
  const Split& split = splits.front();

  err << "training " << cfg.layers << "x" << cfg.dim << " for " << cfg.epochs << " epochs on "
      << split.train.size() << " items (" << kernels::isa_name(kernels::active().isa) << ")\n";
  const auto result = gcn::train(d, split.train, cfg);

  io::Checkpoint c{cfg, result.params, {}};
  for (std::size_t i : split.train) c.train_items.push_back(d.graph.item_ids[i]);
  io::write_text(o.out, io::canonical(io::checkpoint_to_json(c)));
  out << io::canonical({{"seed", cfg.seed},
                        {"epochs", result.history.size()},
                        {"initial_loss", result.history.front()},
                        {"final_loss", result.history.back()},
                        {"train_items", split.train.size()}});
  return kOk;
}

int run_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const Dataset d = io::load_dataset(o.data);
  const io::Checkpoint c = io::checkpoint_from_json(io::read_json(o.model));
  const auto splits = io::splits_from_json(io::read_json(o.split), d);
  const PropagationMatrix prop = propagation_matrix(d.graph);
  const gcn::Matrix h0 = gcn::input_features(c.config.features, prop.nodes());

  std::vector<std::size_t> all(d.graph.m);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto predictions = gcn::predict(c.params, prop, h0, all);

  std::vector<double> scores;
  for (const auto& split : splits) {
    std::size_t leaked = 0;
    for (std::size_t i : split.test) {
      leaked += std::count(c.train_items.begin(), c.train_items.end(), d.graph.item_ids[i]);
    }
    if (leaked > 0) err << "warning: " << leaked << " test items were used for training\n";
    scores.push_back(harness::rmse(predictions, d.truth, split.test));
  }
  out << "method,split,rmse\n" << rmse_csv("gcn-soan", scores);
  return kOk;
}

int run_baseline(const Options& o, std::ostream& out) {
  const auto method = harness::parse_method(o.method);
  if (method == harness::Method::kGcnSoan) throw ConfigError("baseline method must be average or median");
  const Dataset d = io::load_dataset(o.data);
  const auto splits = io::splits_from_json(io::read_json(o.split), d);
  std::vector<double> scores;
  for (const auto& split : splits) {
    std::vector<double> predictions(d.graph.m, 0.0);
    const auto test_pred = method == harness::Method::kAverage
                               ? baselines::average_predict(d.graph, split.test)
                               : baselines::median_predict(d.graph, split.test);
    for (std::size_t t = 0; t < split.test.size(); ++t) predictions[split.test[t]] = test_pred[t];
    scores.push_back(harness::rmse(predictions, d.truth, split.test));
  }
  out << "method,split,rmse\n" << rmse_csv(o.method, scores);
  return kOk;
}

int run_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto spec = io::sweep_spec_from_json(io::read_json(o.spec));
  const std::size_t jobs = resolve_jobs(o.jobs);
  err << "sweeping " << spec.parameter << " over " << spec.values.size() << " values with "
      << jobs << " job(s)\n";
  const auto points = harness::run_sweep(spec, jobs);
  std::size_t failed = 0;
  for (const auto& p : points) {
    if (!p.report) {
      ++failed;
      err << "point " << spec.parameter << "=" << io::format_double(p.value)
          << " failed: " << p.error << "\n";
    }
  }
  io::write_text(o.out, harness::sweep_csv(spec, points));
  out << io::canonical(io::sweep_to_json(spec, points));
  return failed == points.size() ? kRuntime : kOk;
}

int run_import(const Options& o, std::ostream& out, std::ostream& err) {
  io::LoadOptions load;
  if (!o.scale.empty()) load.scale_max = parse_scale(o.scale);
  const Dataset d = io::load_dataset(o.from, load);
  warn_report(d, err);
  io::save_dataset(d, o.out);
  out << io::canonical(summary(d));
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Peer-assessment aggregation with graph convolutional networks", "peergrade"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Generate a synthetic dataset bundle");
  generate->add_option("--config", o.config, "Scenario config (JSON)")->required();
  generate->add_option("--out", o.out, "Output bundle directory")->required();
  generate->add_option("--seed", o.seed, "Override the scenario seed");

  auto* train = app.add_subcommand("train", "Train a GCN-SOAN model");
  train->add_option("--data", o.data, "Dataset bundle directory")->required();
  train->add_option("--train-config", o.train_config, "Training config (JSON)")->required();
  train->add_option("--out", o.out, "Model checkpoint path")->required();
  train->add_option("--seed", o.seed, "Override the training seed");

  auto* eval = app.add_subcommand("eval", "Score a trained model on test splits");
  eval->add_option("--data", o.data, "Dataset bundle directory")->required();
  eval->add_option("--model", o.model, "Model checkpoint")->required();
  eval->add_option("--split", o.split, "Split document (JSON)")->required();

  auto* baseline = app.add_subcommand("baseline", "Score the average or median baseline");
  baseline->add_option("--method", o.method, "average | median")
      ->required()
      ->check(CLI::IsMember({"average", "median"}));
  baseline->add_option("--data", o.data, "Dataset bundle directory")->required();
  baseline->add_option("--split", o.split, "Split document (JSON)")->required();

  auto* sweep = app.add_subcommand("sweep", "Run a one-parameter sweep");
  sweep->add_option("--spec", o.spec, "Sweep spec (JSON)")->required();
  sweep->add_option("--out", o.out, "Long-format CSV output")->required();
  sweep->add_option("--jobs", o.jobs, "Concurrent grid points (default: PEERGRADE_JOBS or 1)");

  auto* import = app.add_subcommand("import", "Import a CSV peer-grading dataset");
  import->add_option("--from", o.from, "Directory with CSV files")->required();
  import->add_option("--scale", o.scale, "Grade scale, e.g. max=10");
  import->add_option("--out", o.out, "Output bundle directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (generate->parsed()) return run_generate(o, *generate, out, err);
    if (train->parsed()) return run_train(o, *train, out, err);
    if (eval->parsed()) return run_eval(o, out, err);
    if (baseline->parsed()) return run_baseline(o, out);
    if (sweep->parsed()) return run_sweep(o, out, err);
    if (import->parsed()) return run_import(o, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  err << app.help();
  return kUsage;
}

}  // namespace peergrade::cli
