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

// Data-parallel inner loops used by the GCN. Each kernel has a scalar
// reference and optional AVX2 / NEON variants; the active table is chosen
// once at startup from CPU features and may be overridden with the
// PEERGRADE_SIMD environment variable (scalar | avx2 | neon).
//
// All variants produce bit-identical results: elementwise kernels use the
// same operation order and no FMA, and the dot product accumulates into
// four interleaved partial sums that the scalar reference reproduces.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace peergrade::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

struct AdamCoefficients {
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  double bias_correction1;  // 1 - beta1^t
  double bias_correction2;  // 1 - beta2^t
};

struct KernelTable {
  Isa isa;
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum_i x_i * y_i, four-way interleaved accumulation
  double (*dot)(const double* x, const double* y, std::size_t n);
  // grad_in = grad_out * (pre > 0 ? 1 : act + 1), i.e. the ELU derivative
  // expressed through the activation value act = expm1(pre).
  void (*elu_backward)(const double* pre, const double* act, const double* grad_out,
                       double* grad_in, std::size_t n);
  // In-place Adam update of one parameter block.
  void (*adam_update)(const AdamCoefficients& c, const double* grad, double* param,
                      double* m, double* v, std::size_t n);
};

/// Table for a specific ISA. Throws if the ISA was not compiled in or the
/// CPU does not support it.
const KernelTable& table_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Table selected at first use (best available, or PEERGRADE_SIMD).
const KernelTable& active();

// Per-ISA entry points. Declared here so the dispatcher and the
// equivalence tests can name them directly.
namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void elu_backward(const double* pre, const double* act, const double* grad_out, double* grad_in,
                  std::size_t n);
void adam_update(const AdamCoefficients& c, const double* grad, double* param, double* m,
                 double* v, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void elu_backward(const double* pre, const double* act, const double* grad_out, double* grad_in,
                  std::size_t n);
void adam_update(const AdamCoefficients& c, const double* grad, double* param, double* m,
                 double* v, std::size_t n);
}  // namespace avx2

namespace neon {
bool compiled();
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void elu_backward(const double* pre, const double* act, const double* grad_out, double* grad_in,
                  std::size_t n);
void adam_update(const AdamCoefficients& c, const double* grad, double* param, double* m,
                 double* v, std::size_t n);
}  // namespace neon

}  // namespace peergrade::kernels
