#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Arithmetic inner loops shared by the correspondence and attention code.
//
// Every variant reduces dot products in the same order: eight interleaved
// lane accumulators (lane = channel mod 8), each summed sequentially, then
// folded as ((l0+l4)+(l2+l6)) + ((l1+l5)+(l3+l7)). Elementwise kernels do one
// multiply and one add per element with no fusion. Under that contract the
// SIMD variants are bit-identical to the scalar reference, which is what
// lets windowed and exhaustive searches agree on every tie.
namespace cove::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_c a[c] * b[c]
  float (*dot)(const float* a, const float* b, std::size_t n);
  // out[r] = dot(query, rows + r * n) for r in [0, count)
  void (*dot_rows)(const float* query, const float* rows, std::size_t count, std::size_t n, float* out);
  // y[c] += alpha * x[c]
  void (*axpy)(float alpha, const float* x, float* y, std::size_t n);
  // x[c] /= divisor
  void (*divide)(float* x, float divisor, std::size_t n);
};

// True when the running CPU and this build both support `isa`.
bool isa_available(Isa isa);

// Widest available variant on this machine; resolved once.
Isa best_isa();

// All variants usable here, scalar first.
std::vector<Isa> available_isas();

// Throws ParameterError for an unavailable variant.
const KernelTable& table(Isa isa);

inline const KernelTable& active() { return table(best_isa()); }

namespace scalar {
float dot(const float* a, const float* b, std::size_t n);
void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t n, float* out);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void divide(float* x, float divisor, std::size_t n);
}  // namespace scalar

}  // namespace cove::kernels
