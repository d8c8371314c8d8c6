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

#include <cstdlib>
#include <string>

#include "peergrade/errors.hpp"
#include "peergrade/kernels.hpp"

namespace peergrade::kernels {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, scalar::axpy, scalar::dot, scalar::elu_backward,
                                   scalar::adam_update};
constexpr KernelTable kAvx2Table{Isa::kAvx2, avx2::axpy, avx2::dot, avx2::elu_backward,
                                 avx2::adam_update};
constexpr KernelTable kNeonTable{Isa::kNeon, neon::axpy, neon::dot, neon::elu_backward,
                                 neon::adam_update};

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
      return neon::compiled();
  }
  return false;
}

const KernelTable& select_from_environment() {
  if (const char* forced = std::getenv("PEERGRADE_SIMD"); forced != nullptr && *forced != '\0') {
    const std::string name(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (isa_name(isa) == name) return table_for(isa);
    }
    throw ConfigError("PEERGRADE_SIMD: unknown instruction set '" + name + "'");
  }
  return table_for(available_isas().back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw ConfigError("instruction set '" + std::string(isa_name(isa)) +
                      "' is not available on this machine");
  }
  switch (isa) {
    case Isa::kAvx2:
      return kAvx2Table;
    case Isa::kNeon:
      return kNeonTable;
    case Isa::kScalar:
      break;
  }
  return kScalarTable;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::kScalar};
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select_from_environment();
  return table;
}

}  // namespace peergrade::kernels
