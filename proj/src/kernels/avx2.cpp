// Compiled with -mavx2; only reached through the dispatcher after a CPUID check.
#include <immintrin.h>

#include "cove/kernels.hpp"

namespace cove::kernels::avx2 {

namespace {

inline float fold(__m256 acc) {
  alignas(32) float lane[8];
  _mm256_store_ps(lane, acc);
  const float s0 = lane[0] + lane[4];
  const float s1 = lane[1] + lane[5];
  const float s2 = lane[2] + lane[6];
  const float s3 = lane[3] + lane[7];
  return (s0 + s2) + (s1 + s3);
}

inline __m256 tail_mask(std::size_t rem) {
  alignas(32) static const std::int32_t bits[16] = {-1, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0};
  return _mm256_castsi256_ps(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits + 8 - rem)));
}

inline __m256 accumulate(const float* a, const float* b, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t c = 0;
  for (; c + 8 <= n; c += 8) {
    acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_loadu_ps(a + c), _mm256_loadu_ps(b + c)));
  }
  if (const std::size_t rem = n - c; rem != 0) {
    // Masked-off lanes add +0.0f, which leaves the lane sum unchanged.
    const __m256i m = _mm256_castps_si256(tail_mask(rem));
    const __m256 va = _mm256_maskload_ps(a + c, m);
    const __m256 vb = _mm256_maskload_ps(b + c, m);
    acc = _mm256_add_ps(acc, _mm256_mul_ps(va, vb));
  }
  return acc;
}

}  // namespace

float dot(const float* a, const float* b, std::size_t n) { return fold(accumulate(a, b, n)); }

void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t n, float* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = fold(accumulate(query, rows + r * n, n));
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(alpha);
  std::size_t c = 0;
  for (; c + 8 <= n; c += 8) {
    const __m256 prod = _mm256_mul_ps(va, _mm256_loadu_ps(x + c));
    _mm256_storeu_ps(y + c, _mm256_add_ps(_mm256_loadu_ps(y + c), prod));
  }
  for (; c < n; ++c) y[c] += alpha * x[c];
}

void divide(float* x, float divisor, std::size_t n) {
  const __m256 vd = _mm256_set1_ps(divisor);
  std::size_t c = 0;
  for (; c + 8 <= n; c += 8) _mm256_storeu_ps(x + c, _mm256_div_ps(_mm256_loadu_ps(x + c), vd));
  for (; c < n; ++c) x[c] /= divisor;
}

}  // namespace cove::kernels::avx2
