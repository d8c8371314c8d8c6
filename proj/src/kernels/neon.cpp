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

#include "peergrade/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)
#define PEERGRADE_HAVE_NEON 1
#include <arm_neon.h>
#else
#define PEERGRADE_HAVE_NEON 0
#endif

namespace peergrade::kernels::neon {

#if PEERGRADE_HAVE_NEON

bool compiled() { return true; }

// vmulq/vaddq only: vfmaq would round once and break parity with scalar.

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  // Two registers emulate the four interleaved lanes of the scalar reference.
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double sum = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void elu_backward(const double* pre, const double* act, const double* grad_out, double* grad_in,
                  std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t positive = vcgtq_f64(vld1q_f64(pre + i), zero);
    const float64x2_t negative_slope = vaddq_f64(vld1q_f64(act + i), one);
    const float64x2_t slope = vbslq_f64(positive, one, negative_slope);
    vst1q_f64(grad_in + i, vmulq_f64(vld1q_f64(grad_out + i), slope));
  }
  for (; i < n; ++i) {
    const double slope = pre[i] > 0.0 ? 1.0 : act[i] + 1.0;
    grad_in[i] = grad_out[i] * slope;
  }
}

void adam_update(const AdamCoefficients& c, const double* grad, double* param, double* m,
                 double* v, std::size_t n) {
  const float64x2_t b1 = vdupq_n_f64(c.beta1);
  const float64x2_t b2 = vdupq_n_f64(c.beta2);
  const float64x2_t omb1 = vdupq_n_f64(1.0 - c.beta1);
  const float64x2_t omb2 = vdupq_n_f64(1.0 - c.beta2);
  const float64x2_t bc1 = vdupq_n_f64(c.bias_correction1);
  const float64x2_t bc2 = vdupq_n_f64(c.bias_correction2);
  const float64x2_t lr = vdupq_n_f64(c.learning_rate);
  const float64x2_t eps = vdupq_n_f64(c.epsilon);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t g = vld1q_f64(grad + i);
    const float64x2_t mi = vaddq_f64(vmulq_f64(b1, vld1q_f64(m + i)), vmulq_f64(omb1, g));
    const float64x2_t vi =
        vaddq_f64(vmulq_f64(b2, vld1q_f64(v + i)), vmulq_f64(vmulq_f64(omb2, g), g));
    vst1q_f64(m + i, mi);
    vst1q_f64(v + i, vi);
    const float64x2_t m_hat = vdivq_f64(mi, bc1);
    const float64x2_t v_hat = vdivq_f64(vi, bc2);
    const float64x2_t step = vdivq_f64(vmulq_f64(lr, m_hat), vaddq_f64(vsqrtq_f64(v_hat), eps));
    vst1q_f64(param + i, vsubq_f64(vld1q_f64(param + i), step));
  }
  if (i < n) scalar::adam_update(c, grad + i, param + i, m + i, v + i, n - i);
}

#else

bool compiled() { return false; }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
void elu_backward(const double* pre, const double* act, const double* grad_out, double* grad_in,
                  std::size_t n) {
  scalar::elu_backward(pre, act, grad_out, grad_in, n);
}
void adam_update(const AdamCoefficients& c, const double* grad, double* param, double* m,
                 double* v, std::size_t n) {
  scalar::adam_update(c, grad, param, m, v, n);
}

#endif

}  // namespace peergrade::kernels::neon
