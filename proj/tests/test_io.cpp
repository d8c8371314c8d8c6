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

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "peergrade/errors.hpp"
#include "peergrade/io.hpp"
#include "test_support.hpp"

using namespace peergrade;
namespace fs = std::filesystem;

namespace {

io::Json versioned(io::Json doc) {
  doc["schema_version"] = io::kSchemaVersion;
  return doc;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("peergrade_test_io_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_small_bundle(const fs::path& dir, const std::string& grade = "0.5") {
  write_file(dir / "assessments.csv", "grader_id,item_id,grade\nbob,essay1," + grade + "\nann,essay2,0.25\n");
  write_file(dir / "ownership.csv", "user_id,item_id,weight\nann,essay1,1\nbob,essay2,1\n");
  write_file(dir / "truth.csv", "item_id,value\nessay1,0.75\n");
}

}  // namespace

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(5.0) == "5");
  CHECK(io::parse_double("1e-3") == 0.001);
  CHECK_THROWS_AS(io::parse_double("0,5"), ValidationError);
  CHECK_THROWS_AS(io::parse_double(""), ValidationError);
  CHECK_THROWS_AS(io::parse_double("0.5x"), ValidationError);
}

TEST_CASE("bundle load") {
  TempDir tmp("load");
  write_small_bundle(tmp.path);
  const Dataset d = io::load_dataset(tmp.path);
  CHECK(d.graph.user_ids == std::vector<std::string>{"ann", "bob"});
  CHECK(d.graph.item_ids == std::vector<std::string>{"essay1", "essay2"});
  CHECK(d.graph.assessment == std::vector<Entry>{{0, 1, 0.25}, {1, 0, 0.5}});
  CHECK(d.truth.values == std::vector<double>{0.75, 0.0});
  CHECK(d.truth.known == std::vector<bool>{true, false});

  SUBCASE("scaling") {
    write_small_bundle(tmp.path, "8");
    write_file(tmp.path / "truth.csv", "item_id,value\nessay1,7.5\n");
    CHECK_THROWS_AS(io::load_dataset(tmp.path), ParseError);
    const Dataset scaled = io::load_dataset(tmp.path, {10.0});
    CHECK(scaled.graph.assessment[1].weight == 0.8);
    CHECK(scaled.truth.values[0] == 0.75);
    CHECK_THROWS_AS(io::load_dataset(tmp.path, {0.0}), ValidationError);
  }
  SUBCASE("missing files") {
    fs::remove(tmp.path / "truth.csv");
    CHECK_THROWS_AS(io::load_dataset(tmp.path), IoError);
    CHECK_THROWS_AS(io::load_dataset(tmp.path / "nope"), IoError);
  }
  SUBCASE("parse errors carry file and line") {
    write_file(tmp.path / "assessments.csv", "grader_id,item_id,grade\nbob,essay1,0.5\nann,essay2,high\n");
    try {
      io::load_dataset(tmp.path);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("assessments.csv:3") != std::string::npos);
    }
    write_file(tmp.path / "assessments.csv", "grader,item,grade\nbob,essay1,0.5\n");
    CHECK_THROWS_AS(io::load_dataset(tmp.path), ParseError);
  }
  SUBCASE("duplicates") {
    write_file(tmp.path / "assessments.csv", "grader_id,item_id,grade\nbob,essay1,0.5\nbob,essay1,0.6\n");
    CHECK_THROWS_AS(io::load_dataset(tmp.path), DuplicateEntryError);
  }
  SUBCASE("truth rows declare items unless a manifest lists them") {
    write_file(tmp.path / "truth.csv", "item_id,value\nessay9,0.5\n");
    const Dataset declared = io::load_dataset(tmp.path);
    CHECK(declared.graph.m == 3);
    CHECK(declared.truth.known == std::vector<bool>{false, false, true});
    write_file(tmp.path / "manifest.json",
               R"({"schema_version": 1, "users": ["ann", "bob"], "items": ["essay1", "essay2"]})");
    CHECK_THROWS_AS(io::load_dataset(tmp.path), ValidationError);
  }
}

TEST_CASE("bundle round trip") {
  TempDir tmp("roundtrip");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    Dataset d;
    d.graph = testing::random_graph(rng);
    d.truth.values.resize(d.graph.m);
    d.truth.known.resize(d.graph.m);
    for (std::size_t i = 0; i < d.graph.m; ++i) {
      d.truth.known[i] = u(rng) < 0.7;
      d.truth.values[i] = d.truth.known[i] ? u(rng) : 0.0;
    }
    const fs::path dir = tmp.path / std::to_string(rep);
    io::save_dataset(d, dir);
    CHECK(io::load_dataset(dir) == d);
    if (rep % 3 == 0) {
      // Isolated ids survive only through the manifest.
      fs::remove(dir / "manifest.json");
      const Dataset without = io::load_dataset(dir);
      CHECK(without.graph.assessment.size() == d.graph.assessment.size());
      CHECK(without.truth.known_items().size() == d.truth.known_items().size());
    }
  }
}

TEST_CASE("saving is locale independent") {
  TempDir tmp("locale");
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  const bool switched = std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr;
  Dataset d{graph_from_indices(2, 2, {}, {}, {{0, 1, 0.25}, {1, 0, 0.5}}), GroundTruth::all_known({0.125, 0.75})};
  io::save_dataset(d, tmp.path);
  CHECK(read_file(tmp.path / "truth.csv").find("0.125") != std::string::npos);
  CHECK(io::load_dataset(tmp.path) == d);
  std::setlocale(LC_NUMERIC, saved.c_str());
  if (!switched) MESSAGE("de_DE locale unavailable; checked under the default locale only");
}

TEST_CASE("config documents") {
  SUBCASE("scenario round trip") {
    auto cfg = synthetic::ScenarioConfig::strategic_preset();
    cfg.seed = 17;
    cfg.tau = 0.3;
    cfg.mixture.mu[1] = 0.65;
    CHECK(io::scenario_from_json(io::scenario_to_json(cfg)) == cfg);
    const auto def = synthetic::ScenarioConfig::default_preset();
    CHECK(io::scenario_from_json(versioned(io::Json::object())) == def);
    CHECK(io::scenario_from_json(versioned({{"preset", "strategic"}})) == synthetic::ScenarioConfig::strategic_preset());
  }
  SUBCASE("unknown keys name their location") {
    try {
      io::scenario_from_json(io::Json::parse(R"({"schema_version": 1, "assessment": {"kind": "strategic", "sigma": 0.1}})"));
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("/assessment/sigma") != std::string::npos);
    }
    CHECK_THROWS_AS(io::train_config_from_json(versioned({{"epoch", 3}})), ConfigError);
    CHECK_THROWS_AS(io::scenario_from_json(io::Json{{"schema_version", 2}}), ConfigError);
    CHECK_THROWS_AS(io::scenario_from_json(io::Json::object()), ConfigError);
    CHECK_THROWS_AS(io::scenario_from_json(versioned({{"n", "many"}})), ConfigError);
  }
  SUBCASE("train and split configs") {
    gcn::TrainConfig t;
    t.features = gcn::Features::kOneHot;
    t.learning_rate = 0.005;
    CHECK(io::train_config_from_json(io::train_config_to_json(t)) == t);
    harness::SplitConfig s{0.3, 6, 9};
    CHECK(io::split_config_from_json(io::split_config_to_json(s)) == s);
  }
  SUBCASE("explicit splits") {
    Dataset d{graph_from_indices(2, 3, {}, {}, {{0, 1, 0.25}}), GroundTruth::all_known({0.1, 0.2, 0.3})};
    const auto splits = io::splits_from_json(
        io::Json::parse(R"({"schema_version": 1, "splits": [{"train": ["i2"], "test": ["i0", "i1"]}]})"), d);
    REQUIRE(splits.size() == 1);
    CHECK(splits[0].train == std::vector<std::size_t>{2});
    CHECK(splits[0].test == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(io::splits_from_json(
                        io::Json::parse(R"({"schema_version": 1, "splits": [{"train": ["i2"], "test": ["i2"]}]})"), d),
                    ValidationError);
    CHECK(io::splits_from_json(versioned({{"train_fraction", 0.5}, {"n_splits", 2}}), d).size() == 2);
  }
  SUBCASE("sweep spec round trip") {
    harness::SweepSpec spec;
    spec.parameter = "alpha";
    spec.values = {-0.3, 0.3};
    spec.options.methods = {harness::Method::kAverage};
    const auto back = io::sweep_spec_from_json(io::sweep_spec_to_json(spec));
    CHECK(back.parameter == spec.parameter);
    CHECK(back.values == spec.values);
    CHECK(back.options.methods == spec.options.methods);
    CHECK(back.base == spec.base);
    CHECK(back.options.train == spec.options.train);
  }
}

TEST_CASE("checkpoint round trip") {
  gcn::TrainConfig cfg;
  cfg.dim = 3;
  cfg.seed = 11;
  io::Checkpoint c{cfg, gcn::init_params(cfg, 1), {"i0", "i3"}};
  c.params.bias = 0.1 + 0.2;
  const auto text = io::canonical(io::checkpoint_to_json(c));
  CHECK(io::checkpoint_from_json(io::Json::parse(text)) == c);
  auto doc = io::checkpoint_to_json(c);
  doc["kind"] = "report";
  CHECK_THROWS_AS(io::checkpoint_from_json(doc), ConfigError);
  doc = io::checkpoint_to_json(c);
  doc["head"].push_back(1.0);
  CHECK_THROWS_AS(io::checkpoint_from_json(doc), ConfigError);
}

TEST_CASE("report round trip") {
  harness::ExperimentReport r;
  r.config_json = R"({"a":1})";
  r.n_splits = 2;
  r.methods.push_back({harness::Method::kAverage, {0.1, 0.30000000000000004}, 0.2, 0.1});
  r.wall_clock_seconds = 3.5;
  const auto doc = io::report_to_json(r);
  CHECK_FALSE(doc.contains("wall_clock_seconds"));
  CHECK(io::report_to_json(r, true).contains("wall_clock_seconds"));
  CHECK(io::report_from_json(doc) == r);

  TempDir tmp("report");
  io::write_results(r, tmp.path / "r.json");
  CHECK(io::read_results(tmp.path / "r.json") == r);
  const std::string text = read_file(tmp.path / "r.json");
  CHECK(text == io::canonical(io::report_to_json(io::read_results(tmp.path / "r.json"))));
  CHECK(text.back() == '\n');
  CHECK_THROWS_AS(io::read_results(tmp.path / "missing.json"), IoError);
}
