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

#include <cstdint>
#include <random>

namespace peergrade {

using Engine = std::mt19937_64;

/// Named substreams of a master seed. The numeric values are part of the
/// reproducibility contract; do not renumber.
enum class Stream : std::uint64_t {
  kTruth = 1,
  kOwnership = 2,
  kSocial = 3,
  kAssessment = 4,
  kSplit = 5,
  kInit = 6,
};

/// SplitMix64 finalizer of (seed, stream, index).
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Engine(derive_seed(seed, stream, index));
}

}  // namespace peergrade
