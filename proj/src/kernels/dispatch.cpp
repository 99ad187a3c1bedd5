#include <string>

#include "cove/error.hpp"
#include "cove/kernels.hpp"

namespace cove::kernels {

#if defined(COVE_HAVE_AVX2)
namespace avx2 {
float dot(const float* a, const float* b, std::size_t n);
void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t n, float* out);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void divide(float* x, float divisor, std::size_t n);
}  // namespace avx2
#endif

#if defined(COVE_HAVE_NEON)
namespace neon {
float dot(const float* a, const float* b, std::size_t n);
void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t n, float* out);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void divide(float* x, float divisor, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr KernelTable kScalar{Isa::scalar, scalar::dot, scalar::dot_rows, scalar::axpy, scalar::divide};
#if defined(COVE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, avx2::dot, avx2::dot_rows, avx2::axpy, avx2::divide};
#endif
#if defined(COVE_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, neon::dot, neon::dot_rows, neon::axpy, neon::divide};
#endif

Isa detect() {
#if defined(COVE_HAVE_AVX2)
  if (isa_available(Isa::avx2)) return Isa::avx2;
#endif
#if defined(COVE_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(COVE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(COVE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa isa = detect();
  return isa;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw ParameterError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this machine");
  }
  switch (isa) {
#if defined(COVE_HAVE_AVX2)
    case Isa::avx2: return kAvx2;
#endif
#if defined(COVE_HAVE_NEON)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

}  // namespace cove::kernels
