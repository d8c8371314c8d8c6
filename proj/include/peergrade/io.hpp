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

// Dataset bundles (CSV), configuration documents and result reports
// (canonical JSON: sorted keys, two-space indent, trailing newline).
//
// Bundle layout:
//   assessments.csv  grader_id,item_id,grade      required
//   ownership.csv    user_id,item_id,weight       optional
//   social.csv       user_a,user_b,weight         optional, one row per pair
//   truth.csv        item_id,value                required
//   manifest.json    ids and counts               optional on load

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "peergrade/gcn.hpp"
#include "peergrade/harness.hpp"
#include "peergrade/soan.hpp"
#include "peergrade/synthetic.hpp"

namespace peergrade::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct LoadOptions {
  /// When set, grades and truth values are divided by this maximum.
  std::optional<double> scale_max;
};

Dataset load_dataset(const std::filesystem::path& dir, const LoadOptions& options = {});
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

std::string canonical(const Json& doc);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// Configuration documents. Every parser rejects unknown keys and reports the
// JSON pointer of the offending value.

Json scenario_to_json(const synthetic::ScenarioConfig& cfg);
synthetic::ScenarioConfig scenario_from_json(const Json& doc);

Json train_config_to_json(const gcn::TrainConfig& cfg);
gcn::TrainConfig train_config_from_json(const Json& doc);

Json split_config_to_json(const harness::SplitConfig& cfg);
harness::SplitConfig split_config_from_json(const Json& doc);

/// A split document is either a SplitConfig or an explicit list
/// {"splits": [{"train": [item ids], "test": [item ids]}]}.
std::vector<Split> splits_from_json(const Json& doc, const Dataset& dataset);

harness::SweepSpec sweep_spec_from_json(const Json& doc);
Json sweep_spec_to_json(const harness::SweepSpec& spec);

synthetic::ScenarioConfig load_config(const std::filesystem::path& path);

// Model checkpoints.

struct Checkpoint {
  gcn::TrainConfig config;
  gcn::ModelParams params;
  std::vector<std::string> train_items;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

Json checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(const Json& doc);

// Reports.

Json report_to_json(const harness::ExperimentReport& report, bool include_timing = false);
harness::ExperimentReport report_from_json(const Json& doc);
void write_results(const harness::ExperimentReport& report, const std::filesystem::path& path);
harness::ExperimentReport read_results(const std::filesystem::path& path);

Json sweep_to_json(const harness::SweepSpec& spec, const std::vector<harness::SweepPoint>& points);

}  // namespace peergrade::io
