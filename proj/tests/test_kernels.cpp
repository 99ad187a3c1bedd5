#include <doctest.h>

#include <bit>
#include <cstring>

#include "cove/error.hpp"
#include "cove/kernels.hpp"
#include "test_support.hpp"

using namespace cove;
namespace k = cove::kernels;

namespace {

bool same_bits(float a, float b) { return std::bit_cast<std::uint32_t>(a) == std::bit_cast<std::uint32_t>(b); }

}  // namespace

TEST_CASE("scalar dot matches a sequential double oracle") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = test::gaussian(n, rng);
    const auto b = test::gaussian(n, rng);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(static_cast<double>(a[i]) * b[i]);
    CHECK(std::abs(k::scalar::dot(a.data(), b.data(), n) - test::naive_dot(a.data(), b.data(), n)) <=
          1e-6 * (1.0 + mag));
  }
}

TEST_CASE("every available kernel variant is bit-identical to the scalar reference") {
  std::mt19937_64 rng(12);
  for (k::Isa isa : k::available_isas()) {
    CAPTURE(k::isa_name(isa));
    const auto& t = k::table(isa);
    CHECK(t.isa == isa);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = test::gaussian(n, rng);
      const auto b = test::gaussian(n, rng);
      CHECK(same_bits(t.dot(a.data(), b.data(), n), k::scalar::dot(a.data(), b.data(), n)));
      CHECK(same_bits(t.dot(a.data(), b.data(), n), t.dot(b.data(), a.data(), n)));

      const std::size_t rows = 5;
      const auto m = test::gaussian(rows * n, rng);
      std::vector<float> got(rows), want(rows);
      t.dot_rows(a.data(), m.data(), rows, n, got.data());
      k::scalar::dot_rows(a.data(), m.data(), rows, n, want.data());
      CHECK(std::memcmp(got.data(), want.data(), rows * sizeof(float)) == 0);

      auto y1 = test::gaussian(n, rng);
      auto y2 = y1;
      t.axpy(0.37f, a.data(), y1.data(), n);
      k::scalar::axpy(0.37f, a.data(), y2.data(), n);
      CHECK(y1 == y2);

      t.divide(y1.data(), 3.0f, n);
      k::scalar::divide(y2.data(), 3.0f, n);
      CHECK(y1 == y2);
    }
  }
}

TEST_CASE("dispatch resolves to an available variant") {
  CHECK(k::isa_available(k::best_isa()));
  CHECK(k::isa_available(k::Isa::scalar));
  CHECK(k::active().isa == k::best_isa());
  for (k::Isa isa : {k::Isa::avx2, k::Isa::neon}) {
    if (!k::isa_available(isa)) CHECK_THROWS_AS(k::table(isa), ParameterError);
  }
}

TEST_CASE("dot of an empty vector is zero") {
  for (k::Isa isa : k::available_isas()) CHECK(k::table(isa).dot(nullptr, nullptr, 0) == 0.0f);
}
