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

#include "peergrade/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "peergrade/errors.hpp"

namespace peergrade::baselines {
namespace {

template <typename Reduce>
std::vector<double> aggregate(const SoanGraph& graph, std::span<const std::size_t> item_ids,
                              Reduce reduce) {
  const auto grades = grades_by_item(graph);
  std::vector<double> out;
  out.reserve(item_ids.size());
  for (std::size_t i : item_ids) {
    if (i >= graph.m) throw ValidationError("unknown item index " + std::to_string(i));
    if (grades[i].empty()) {
      throw ValidationError("item '" + graph.item_ids[i] + "' has no assessments");
    }
    out.push_back(reduce(grades[i]));
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> grades_by_item(const SoanGraph& graph) {
  std::vector<std::vector<double>> grades(graph.m);
  for (const auto& e : graph.assessment) grades[e.col].push_back(e.weight);
  return grades;
}

double mean_of(std::span<const double> grades) {
  // Sorted summation keeps the result independent of grade order.
  std::vector<double> sorted(grades.begin(), grades.end());
  std::sort(sorted.begin(), sorted.end());
  return std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
}

double median_of(std::vector<double> grades) {
  std::sort(grades.begin(), grades.end());
  const std::size_t mid = grades.size() / 2;
  if (grades.size() % 2 == 1) return grades[mid];
  return 0.5 * (grades[mid - 1] + grades[mid]);
}

std::vector<double> average_predict(const SoanGraph& graph, std::span<const std::size_t> item_ids) {
  return aggregate(graph, item_ids, [](const std::vector<double>& g) { return mean_of(g); });
}

std::vector<double> median_predict(const SoanGraph& graph, std::span<const std::size_t> item_ids) {
  return aggregate(graph, item_ids, [](const std::vector<double>& g) { return median_of(g); });
}

}  // namespace peergrade::baselines
