// AArch64 variant. Two 4-wide accumulators stand in for the eight reference
// lanes: lo holds lanes 0-3, hi holds lanes 4-7.
#include <arm_neon.h>

#include "cove/kernels.hpp"

namespace cove::kernels::neon {

float dot(const float* a, const float* b, std::size_t n) {
  float32x4_t lo = vdupq_n_f32(0.0f);
  float32x4_t hi = vdupq_n_f32(0.0f);
  std::size_t c = 0;
  for (; c + 8 <= n; c += 8) {
    lo = vaddq_f32(lo, vmulq_f32(vld1q_f32(a + c), vld1q_f32(b + c)));
    hi = vaddq_f32(hi, vmulq_f32(vld1q_f32(a + c + 4), vld1q_f32(b + c + 4)));
  }
  float lane[8];
  vst1q_f32(lane, lo);
  vst1q_f32(lane + 4, hi);
  for (std::size_t l = 0; c + l < n; ++l) lane[l] += a[c + l] * b[c + l];
  const float s0 = lane[0] + lane[4];
  const float s1 = lane[1] + lane[5];
  const float s2 = lane[2] + lane[6];
  const float s3 = lane[3] + lane[7];
  return (s0 + s2) + (s1 + s3);
}

void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t n, float* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot(query, rows + r * n, n);
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(alpha);
  std::size_t c = 0;
  for (; c + 4 <= n; c += 4) vst1q_f32(y + c, vaddq_f32(vld1q_f32(y + c), vmulq_f32(va, vld1q_f32(x + c))));
  for (; c < n; ++c) y[c] += alpha * x[c];
}

void divide(float* x, float divisor, std::size_t n) {
  const float32x4_t vd = vdupq_n_f32(divisor);
  std::size_t c = 0;
  for (; c + 4 <= n; c += 4) vst1q_f32(x + c, vdivq_f32(vld1q_f32(x + c), vd));
  for (; c < n; ++c) x[c] /= divisor;
}

}  // namespace cove::kernels::neon
