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
#include <vector>

#include "doctest.h"
#include "peergrade/baselines.hpp"
#include "peergrade/errors.hpp"

using namespace peergrade;
using namespace peergrade::baselines;

namespace {

// Items 0..2 graded by users 0..3; item 3 ungraded.
SoanGraph sample_graph() {
  return graph_from_indices(4, 4, {}, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}},
                            {{1, 0, 0.2}, {2, 0, 0.9}, {3, 0, 0.4},
                             {0, 1, 0.5}, {2, 1, 0.7},
                             {0, 2, 0.0}});
}

}  // namespace

TEST_CASE("mean_of and median_of") {
  CHECK(mean_of(std::vector<double>{0.2, 0.9, 0.4}) == doctest::Approx(0.5));
  CHECK(median_of({0.2, 0.9, 0.4}) == 0.4);
  CHECK(median_of({0.7, 0.5}) == doctest::Approx(0.6));
  CHECK(median_of({0.3}) == 0.3);
  CHECK(mean_of(std::vector<double>{0.1, 0.2, 0.3}) == mean_of(std::vector<double>{0.3, 0.1, 0.2}));
}

TEST_CASE("grades_by_item") {
  const auto grades = grades_by_item(sample_graph());
  REQUIRE(grades.size() == 4);
  CHECK(grades[0].size() == 3);
  CHECK(grades[1].size() == 2);
  CHECK(grades[2] == std::vector<double>{0.0});
  CHECK(grades[3].empty());
}

TEST_CASE("average and median predictions") {
  const SoanGraph g = sample_graph();
  const std::vector<std::size_t> ids{2, 0, 1};
  const auto avg = average_predict(g, ids);
  CHECK(avg[0] == 0.0);
  CHECK(avg[1] == doctest::Approx(0.5));
  CHECK(avg[2] == doctest::Approx(0.6));
  const auto med = median_predict(g, ids);
  CHECK(med[0] == 0.0);
  CHECK(med[1] == 0.4);
  CHECK(med[2] == doctest::Approx(0.6));
}

TEST_CASE("ungraded items are rejected by name") {
  const SoanGraph g = sample_graph();
  const std::vector<std::size_t> ids{0, 3};
  try {
    average_predict(g, ids);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(g.item_ids[3]) != std::string::npos);
  }
  CHECK_THROWS_AS(median_predict(g, ids), ValidationError);
}

TEST_CASE("baselines ignore social and ownership relations") {
  const SoanGraph g = sample_graph();
  SoanGraph social = graph_from_indices(4, 4, {{0, 1, 1.0}, {2, 3, 0.5}}, {{0, 0, 1.0}}, {});
  social.assessment = g.assessment;
  const std::vector<std::size_t> ids{0, 1, 2};
  CHECK(average_predict(social, ids) == average_predict(g, ids));
  CHECK(median_predict(social, ids) == median_predict(g, ids));
}
