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

#include "peergrade/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "peergrade/errors.hpp"

namespace peergrade::io {
namespace fs = std::filesystem;
namespace {

// ---------------------------------------------------------------------------
// JSON reading with unknown-key rejection and pointer diagnostics.

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class Reader {
 public:
  Reader(const Json& doc, std::string pointer) : doc_(doc), pointer_(std::move(pointer)) {
    if (!doc_.is_object()) fail(pointer_, "expected an object");
  }

  /// Top-level documents must carry schema_version == 1; nested ones may.
  Reader& schema(bool required) {
    if (!doc_.contains("schema_version")) {
      if (required) fail(pointer_ + "/schema_version", "missing schema_version");
      return *this;
    }
    if (get_int("schema_version") != kSchemaVersion) {
      fail(pointer_ + "/schema_version",
           "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
    return *this;
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

  const Json& value(const std::string& key) {
    seen_.insert(key);
    return doc_.at(key);
  }

  std::string path(const std::string& key) const { return pointer_ + "/" + escape_pointer(key); }

  double get_double(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }
  double get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  std::int64_t get_int(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t get_uint(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(path(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) {
    return has(key) ? get_uint(key) : fallback;
  }
  std::size_t get_size(const std::string& key, std::size_t fallback) {
    return static_cast<std::size_t>(get_uint(key, fallback));
  }

  std::string get_string(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }
  std::string get_string(const std::string& key, std::string fallback) {
    return has(key) ? get_string(key) : std::move(fallback);
  }

  std::vector<double> get_doubles(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_array()) fail(path(key), "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(path(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  std::vector<std::string> get_strings(const std::string& key) {
    const Json& v = value(key);
    if (!v.is_array()) fail(path(key), "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) fail(path(key) + "/" + std::to_string(i), "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  void pair(const std::string& key, double (&out)[2]) {
    if (!has(key)) return;
    const auto values = get_doubles(key);
    if (values.size() != 2) fail(path(key), "expected exactly two numbers");
    out[0] = values[0];
    out[1] = values[1];
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, unused] : doc_.items()) {
      if (!seen_.count(key) && key != "schema_version") fail(path(key), "unknown key '" + key + "'");
    }
  }

  [[noreturn]] static void fail(const std::string& pointer, const std::string& message) {
    throw ConfigError((pointer.empty() ? std::string("/") : pointer) + ": " + message);
  }

 private:
  const Json& doc_;
  std::string pointer_;
  std::set<std::string> seen_;
};

synthetic::ScenarioConfig scenario_from_reader(Reader& r) {
  synthetic::ScenarioConfig cfg;
  const std::string preset = r.get_string("preset", "default");
  if (preset == "strategic") {
    cfg = synthetic::ScenarioConfig::strategic_preset();
  } else if (preset != "default") {
    Reader::fail(r.path("preset"), "unknown preset '" + preset + "'");
  }
  cfg.n = r.get_size("n", cfg.n);
  cfg.m = r.get_size("m", cfg.m);
  cfg.seed = r.get_uint("seed", cfg.seed);
  if (r.has("mixture")) {
    Reader mix(r.value("mixture"), r.path("mixture"));
    mix.pair("pi", cfg.mixture.pi);
    mix.pair("mu", cfg.mixture.mu);
    mix.pair("sigma", cfg.mixture.sigma);
    mix.finish();
  }
  if (r.has("social")) {
    Reader social(r.value("social"), r.path("social"));
    const std::string kind = social.get_string("kind", "none");
    if (kind == "none") {
      cfg.social = synthetic::SocialKind::kNone;
    } else if (kind == "er") {
      cfg.social = synthetic::SocialKind::kErdosRenyi;
    } else if (kind == "homophily") {
      cfg.social = synthetic::SocialKind::kHomophily;
    } else {
      Reader::fail(social.path("kind"), "unknown social kind '" + kind + "'");
    }
    cfg.er_p = social.get_double("p", cfg.er_p);
    cfg.tau = social.get_double("tau", cfg.tau);
    social.finish();
  }
  if (r.has("assessment")) {
    Reader a(r.value("assessment"), r.path("assessment"));
    const std::string kind = a.get_string(
        "kind",
        cfg.assessment == synthetic::AssessmentKind::kStrategic ? "strategic" : "bias_reliability");
    if (kind == "strategic") {
      cfg.assessment = synthetic::AssessmentKind::kStrategic;
    } else if (kind == "bias_reliability") {
      cfg.assessment = synthetic::AssessmentKind::kBiasReliability;
    } else {
      Reader::fail(a.path("kind"), "unknown assessment kind '" + kind + "'");
    }
    cfg.k = a.get_size("k", cfg.k);
    cfg.sigma_h = a.get_double("sigma_h", cfg.sigma_h);
    cfg.alpha = a.get_double("alpha", cfg.alpha);
    cfg.beta = a.get_double("beta", cfg.beta);
    cfg.sigma_max = a.get_double("sigma_max", cfg.sigma_max);
    a.finish();
  }
  r.finish();
  return cfg;
}

gcn::TrainConfig train_from_reader(Reader& r) {
  gcn::TrainConfig cfg;
  cfg.layers = r.get_size("layers", cfg.layers);
  cfg.dim = r.get_size("dim", cfg.dim);
  cfg.epochs = r.get_size("epochs", cfg.epochs);
  cfg.learning_rate = r.get_double("learning_rate", cfg.learning_rate);
  cfg.beta1 = r.get_double("beta1", cfg.beta1);
  cfg.beta2 = r.get_double("beta2", cfg.beta2);
  cfg.epsilon = r.get_double("epsilon", cfg.epsilon);
  cfg.seed = r.get_uint("seed", cfg.seed);
  const std::string features = r.get_string("features", "ones");
  if (features == "ones") {
    cfg.features = gcn::Features::kOnes;
  } else if (features == "one_hot") {
    cfg.features = gcn::Features::kOneHot;
  } else {
    Reader::fail(r.path("features"), "unknown feature kind '" + features + "'");
  }
  r.finish();
  return cfg;
}

harness::SplitConfig split_from_reader(Reader& r) {
  harness::SplitConfig cfg;
  cfg.train_fraction = r.get_double("train_fraction", cfg.train_fraction);
  cfg.n_splits = r.get_size("n_splits", cfg.n_splits);
  cfg.seed = r.get_uint("seed", cfg.seed);
  r.finish();
  return cfg;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRow> read_csv(const fs::path& path, const std::string& header,
                             std::size_t field_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string name = path.filename().string();
  std::string line;
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != header) {
        throw ParseError(name + ":" + std::to_string(line_no) + ": expected header '" + header +
                         "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    CsvRow row{line_no, {}};
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      row.fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.fields.size() != field_count) {
      throw ParseError(name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(field_count) + " fields, got " +
                       std::to_string(row.fields.size()));
    }
    for (const auto& f : row.fields) {
      if (f.empty()) throw ParseError(name + ":" + std::to_string(line_no) + ": empty field");
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw ParseError(name + ": missing header '" + header + "'");
  return rows;
}

double csv_number(const fs::path& path, const CsvRow& row, std::size_t field) {
  try {
    return parse_double(row.fields[field]);
  } catch (const ValidationError&) {
    throw ParseError(path.filename().string() + ":" + std::to_string(row.line) +
                     ": not a number: '" + row.fields[field] + "'");
  }
}

void check_id(const std::string& id) {
  if (id.empty() || id.find_first_of(",\r\n") != std::string::npos) {
    throw ValidationError("id '" + id + "' cannot be written to CSV");
  }
}

Json doubles_json(std::span<const double> values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || first == last) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return value;
}

std::string canonical(const Json& doc) { return doc.dump(2) + "\n"; }

Json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

Dataset load_dataset(const fs::path& dir, const LoadOptions& options) {
  if (!fs::is_directory(dir)) throw IoError("not a dataset directory: " + dir.string());
  const double scale = options.scale_max.value_or(1.0);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("scale maximum must be positive");

  std::vector<std::string> declared_users;
  std::vector<std::string> declared_items;
  const bool has_manifest = fs::exists(dir / "manifest.json");
  if (has_manifest) {
    const Json manifest = read_json(dir / "manifest.json");
    Reader r(manifest, "");
    r.schema(true);
    if (r.has("users")) declared_users = r.get_strings("users");
    if (r.has("items")) declared_items = r.get_strings("items");
    if (r.has("counts")) r.value("counts");
  }

  auto unit_checked = [&](const fs::path& path, const CsvRow& row, double value, bool scaled) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ParseError(path.filename().string() + ":" + std::to_string(row.line) + ": value " +
                       row.fields.back() + " outside [0,1]" +
                       (scaled ? " after scaling" : "; pass a scale maximum for other ranges"));
    }
    return value;
  };

  const fs::path assessments_path = dir / "assessments.csv";
  const fs::path truth_path = dir / "truth.csv";
  if (!fs::exists(assessments_path)) throw IoError("missing required file " + assessments_path.string());
  if (!fs::exists(truth_path)) throw IoError("missing required file " + truth_path.string());

  std::vector<Triple> assessments;
  for (const auto& row : read_csv(assessments_path, "grader_id,item_id,grade", 3)) {
    const double grade = csv_number(assessments_path, row, 2) / scale;
    assessments.push_back(
        {row.fields[0], row.fields[1], unit_checked(assessments_path, row, grade, options.scale_max.has_value())});
  }
  std::vector<Triple> ownerships;
  if (const fs::path p = dir / "ownership.csv"; fs::exists(p)) {
    for (const auto& row : read_csv(p, "user_id,item_id,weight", 3)) {
      ownerships.push_back({row.fields[0], row.fields[1], unit_checked(p, row, csv_number(p, row, 2), false)});
    }
  }
  std::vector<Triple> social;
  if (const fs::path p = dir / "social.csv"; fs::exists(p)) {
    for (const auto& row : read_csv(p, "user_a,user_b,weight", 3)) {
      social.push_back({row.fields[0], row.fields[1], unit_checked(p, row, csv_number(p, row, 2), false)});
    }
  }

  const auto truth_rows = read_csv(truth_path, "item_id,value", 2);
  // Without a manifest, truth rows also declare items.
  if (!has_manifest) {
    for (const auto& row : truth_rows) declared_items.push_back(row.fields[0]);
    std::sort(declared_items.begin(), declared_items.end());
    declared_items.erase(std::unique(declared_items.begin(), declared_items.end()), declared_items.end());
  }

  Dataset d;
  d.graph = build_graph(assessments, ownerships, social, declared_users, declared_items);
  d.truth.values.assign(d.graph.m, 0.0);
  d.truth.known.assign(d.graph.m, false);
  for (const auto& row : truth_rows) {
    const std::string where = "truth.csv:" + std::to_string(row.line) + ": ";
    const auto it = std::lower_bound(d.graph.item_ids.begin(), d.graph.item_ids.end(), row.fields[0]);
    if (it == d.graph.item_ids.end() || *it != row.fields[0]) {
      throw ValidationError(where + "unknown item '" + row.fields[0] + "'");
    }
    const auto i = static_cast<std::size_t>(it - d.graph.item_ids.begin());
    if (d.truth.known[i]) throw DuplicateEntryError(where + "duplicate item '" + row.fields[0] + "'");
    d.truth.values[i] = unit_checked(truth_path, row, csv_number(truth_path, row, 1) / scale,
                                     options.scale_max.has_value());
    d.truth.known[i] = true;
  }
  return d;
}

void save_dataset(const Dataset& d, const fs::path& dir) {
  const SoanGraph& g = d.graph;
  if (auto report = validate(g); report.fatal()) {
    throw ValidationError("refusing to save invalid graph:\n" + report.to_string());
  }
  for (const auto& id : g.user_ids) check_id(id);
  for (const auto& id : g.item_ids) check_id(id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create " + dir.string());

  std::string text = "grader_id,item_id,grade\n";
  for (const auto& e : g.assessment) {
    text += g.user_ids[e.row] + "," + g.item_ids[e.col] + "," + format_double(e.weight) + "\n";
  }
  write_text(dir / "assessments.csv", text);

  if (g.ownership.empty()) {
    fs::remove(dir / "ownership.csv");
  } else {
    text = "user_id,item_id,weight\n";
    for (const auto& e : g.ownership) {
      text += g.user_ids[e.row] + "," + g.item_ids[e.col] + "," + format_double(e.weight) + "\n";
    }
    write_text(dir / "ownership.csv", text);
  }

  if (g.social.empty()) {
    fs::remove(dir / "social.csv");
  } else {
    text = "user_a,user_b,weight\n";
    for (const auto& e : g.social) {
      if (e.row < e.col) {
        text += g.user_ids[e.row] + "," + g.user_ids[e.col] + "," + format_double(e.weight) + "\n";
      }
    }
    write_text(dir / "social.csv", text);
  }

  text = "item_id,value\n";
  for (std::size_t i = 0; i < g.m; ++i) {
    if (i < d.truth.known.size() && d.truth.known[i]) {
      text += g.item_ids[i] + "," + format_double(d.truth.values[i]) + "\n";
    }
  }
  write_text(dir / "truth.csv", text);

  Json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["users"] = g.user_ids;
  manifest["items"] = g.item_ids;
  manifest["counts"] = {{"users", g.n},
                        {"items", g.m},
                        {"assessments", g.assessment.size()},
                        {"ownerships", g.ownership.size()},
                        {"social_pairs", g.social_edge_count()}};
  write_text(dir / "manifest.json", canonical(manifest));
}

// ---------------------------------------------------------------------------
// Configs

Json scenario_to_json(const synthetic::ScenarioConfig& cfg) {
  using synthetic::SocialKind;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["seed"] = cfg.seed;
  j["mixture"] = {{"pi", {cfg.mixture.pi[0], cfg.mixture.pi[1]}},
                  {"mu", {cfg.mixture.mu[0], cfg.mixture.mu[1]}},
                  {"sigma", {cfg.mixture.sigma[0], cfg.mixture.sigma[1]}}};
  j["social"] = {{"kind", cfg.social == SocialKind::kNone         ? "none"
                          : cfg.social == SocialKind::kErdosRenyi ? "er"
                                                                  : "homophily"},
                 {"p", cfg.er_p},
                 {"tau", cfg.tau}};
  j["assessment"] = {
      {"kind", cfg.assessment == synthetic::AssessmentKind::kStrategic ? "strategic"
                                                                       : "bias_reliability"},
      {"k", cfg.k},
      {"sigma_h", cfg.sigma_h},
      {"alpha", cfg.alpha},
      {"beta", cfg.beta},
      {"sigma_max", cfg.sigma_max}};
  return j;
}

synthetic::ScenarioConfig scenario_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  return scenario_from_reader(r);
}

Json train_config_to_json(const gcn::TrainConfig& cfg) {
  return {{"schema_version", kSchemaVersion},
          {"layers", cfg.layers},
          {"dim", cfg.dim},
          {"epochs", cfg.epochs},
          {"learning_rate", cfg.learning_rate},
          {"beta1", cfg.beta1},
          {"beta2", cfg.beta2},
          {"epsilon", cfg.epsilon},
          {"seed", cfg.seed},
          {"features", cfg.features == gcn::Features::kOnes ? "ones" : "one_hot"}};
}

gcn::TrainConfig train_config_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  return train_from_reader(r);
}

Json split_config_to_json(const harness::SplitConfig& cfg) {
  return {{"schema_version", kSchemaVersion},
          {"train_fraction", cfg.train_fraction},
          {"n_splits", cfg.n_splits},
          {"seed", cfg.seed}};
}

harness::SplitConfig split_config_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  return split_from_reader(r);
}

std::vector<Split> splits_from_json(const Json& doc, const Dataset& dataset) {
  if (!doc.is_object() || !doc.contains("splits")) {
    return harness::monte_carlo_splits(dataset.truth, split_config_from_json(doc));
  }
  Reader r(doc, "");
  r.schema(true);
  const Json& list = r.value("splits");
  if (!list.is_array() || list.empty()) Reader::fail("/splits", "expected a non-empty array");
  std::vector<Split> splits;
  for (std::size_t s = 0; s < list.size(); ++s) {
    Reader entry(list[s], "/splits/" + std::to_string(s));
    Split split;
    for (const char* side : {"train", "test"}) {
      auto& ids = std::string(side) == "train" ? split.train : split.test;
      for (const auto& id : entry.get_strings(side)) ids.push_back(dataset.graph.item_index(id));
      std::sort(ids.begin(), ids.end());
    }
    entry.finish();
    check_split(split, dataset.truth);
    splits.push_back(std::move(split));
  }
  r.finish();
  return splits;
}

harness::SweepSpec sweep_spec_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  harness::SweepSpec spec;
  spec.parameter = r.get_string("parameter");
  spec.values = r.get_doubles("values");
  if (spec.values.empty()) Reader::fail("/values", "sweep grid is empty");
  if (r.has("methods")) {
    spec.options.methods.clear();
    for (const auto& name : r.get_strings("methods")) {
      spec.options.methods.push_back(harness::parse_method(name));
    }
  }
  if (r.has("scenario")) {
    Reader s(r.value("scenario"), "/scenario");
    s.schema(false);
    spec.base = scenario_from_reader(s);
  }
  if (r.has("split")) {
    Reader s(r.value("split"), "/split");
    s.schema(false);
    spec.options.split = split_from_reader(s);
  }
  if (r.has("train")) {
    Reader s(r.value("train"), "/train");
    s.schema(false);
    spec.options.train = train_from_reader(s);
  }
  r.finish();
  harness::sweep_point_config(spec, 0);  // rejects unknown parameter names early
  return spec;
}

Json sweep_spec_to_json(const harness::SweepSpec& spec) {
  Json methods = Json::array();
  for (auto m : spec.options.methods) methods.push_back(harness::method_name(m));
  return {{"schema_version", kSchemaVersion},
          {"parameter", spec.parameter},
          {"values", doubles_json(spec.values)},
          {"methods", methods},
          {"scenario", scenario_to_json(spec.base)},
          {"split", split_config_to_json(spec.options.split)},
          {"train", train_config_to_json(spec.options.train)}};
}

synthetic::ScenarioConfig load_config(const fs::path& path) {
  return scenario_from_json(read_json(path));
}

// ---------------------------------------------------------------------------
// Checkpoints

Json checkpoint_to_json(const Checkpoint& c) {
  Json weights = Json::array();
  for (const auto& w : c.params.weights) {
    weights.push_back({{"rows", w.rows}, {"cols", w.cols}, {"data", doubles_json(w.data)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "gcn-soan-checkpoint"},
          {"seed", c.config.seed},
          {"train_config", train_config_to_json(c.config)},
          {"weights", weights},
          {"head", doubles_json(c.params.head)},
          {"bias", c.params.bias},
          {"train_items", c.train_items}};
}

Checkpoint checkpoint_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  if (r.get_string("kind") != "gcn-soan-checkpoint") Reader::fail("/kind", "not a model checkpoint");
  Checkpoint c;
  const std::uint64_t seed = r.get_uint("seed");
  {
    Reader t(r.value("train_config"), "/train_config");
    t.schema(false);
    c.config = train_from_reader(t);
  }
  if (c.config.seed != seed) Reader::fail("/seed", "disagrees with /train_config/seed");
  const Json& weights = r.value("weights");
  if (!weights.is_array() || weights.empty()) Reader::fail("/weights", "expected a non-empty array");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Reader w(weights[l], "/weights/" + std::to_string(l));
    gcn::Matrix m(w.get_size("rows", 0), w.get_size("cols", 0));
    m.data = w.get_doubles("data");
    if (m.data.size() != m.rows * m.cols) Reader::fail(w.path("data"), "length != rows * cols");
    w.finish();
    c.params.weights.push_back(std::move(m));
  }
  c.params.head = r.get_doubles("head");
  c.params.bias = r.get_double("bias");
  if (r.has("train_items")) c.train_items = r.get_strings("train_items");
  r.finish();
  if (c.params.layers() != c.config.layers || c.params.dim() != c.config.dim) {
    Reader::fail("/weights", "shapes disagree with train_config");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reports

Json report_to_json(const harness::ExperimentReport& report, bool include_timing) {
  Json methods = Json::array();
  for (const auto& m : report.methods) {
    methods.push_back({{"method", harness::method_name(m.method)},
                       {"split_rmse", doubles_json(m.split_rmse)},
                       {"mean", m.mean},
                       {"std", m.stddev}});
  }
  Json j = {{"schema_version", kSchemaVersion},
            {"config", Json::parse(report.config_json)},
            {"n_splits", report.n_splits},
            {"methods", methods}};
  if (include_timing) j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j;
}

harness::ExperimentReport report_from_json(const Json& doc) {
  Reader r(doc, "");
  r.schema(true);
  harness::ExperimentReport report;
  report.config_json = r.value("config").dump();
  report.n_splits = r.get_size("n_splits", 0);
  const Json& methods = r.value("methods");
  if (!methods.is_array()) Reader::fail("/methods", "expected an array");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    Reader m(methods[i], "/methods/" + std::to_string(i));
    harness::MethodResult res;
    res.method = harness::parse_method(m.get_string("method"));
    res.split_rmse = m.get_doubles("split_rmse");
    res.mean = m.get_double("mean");
    res.stddev = m.get_double("std");
    m.finish();
    report.methods.push_back(std::move(res));
  }
  report.wall_clock_seconds = r.get_double("wall_clock_seconds", 0.0);
  r.finish();
  return report;
}

void write_results(const harness::ExperimentReport& report, const fs::path& path) {
  write_text(path, canonical(report_to_json(report)));
}

harness::ExperimentReport read_results(const fs::path& path) {
  return report_from_json(read_json(path));
}

Json sweep_to_json(const harness::SweepSpec& spec, const std::vector<harness::SweepPoint>& points) {
  Json list = Json::array();
  for (const auto& p : points) {
    Json entry = {{"value", p.value}};
    if (p.report) {
      entry["report"] = report_to_json(*p.report);
    } else {
      entry["error"] = p.error;
    }
    list.push_back(std::move(entry));
  }
  return {{"schema_version", kSchemaVersion},
          {"spec", sweep_spec_to_json(spec)},
          {"points", list}};
}

}  // namespace peergrade::io
