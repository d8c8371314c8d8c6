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

// Label-free aggregation baselines: the mean or median of the grades each
// item received. They read only the assessment relation.

#include <cstddef>
#include <span>
#include <vector>

#include "peergrade/soan.hpp"

namespace peergrade::baselines {

/// Grades received by every item, in assessment-entry order.
std::vector<std::vector<double>> grades_by_item(const SoanGraph& graph);

/// Throws ValidationError naming the first requested item without grades.
std::vector<double> average_predict(const SoanGraph& graph, std::span<const std::size_t> item_ids);

/// Even counts take the midpoint of the two central grades.
std::vector<double> median_predict(const SoanGraph& graph, std::span<const std::size_t> item_ids);

double mean_of(std::span<const double> grades);
double median_of(std::vector<double> grades);

}  // namespace peergrade::baselines
