#include "cove/kernels.hpp"

namespace cove::kernels::scalar {

namespace {
constexpr std::size_t kLanes = 8;
}

float dot(const float* a, const float* b, std::size_t n) {
  float lane[kLanes] = {};
  std::size_t c = 0;
  for (; c + kLanes <= n; c += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) lane[l] += a[c + l] * b[c + l];
  }
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
  for (std::size_t c = 0; c < n; ++c) y[c] += alpha * x[c];
}

void divide(float* x, float divisor, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) x[c] /= divisor;
}

}  // namespace cove::kernels::scalar
