#include "cove/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cove/error.hpp"
#include "cove/kernels.hpp"

namespace cove {

namespace {

std::vector<float> unit_gaussian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  const auto& k = kernels::active();
  for (;;) {
    std::vector<float> v(d);
    for (float& x : v) x = gauss(rng);
    const float n = std::sqrt(k.dot(v.data(), v.data(), d));
    if (n > 1e-3f) {
      k.divide(v.data(), n, d);
      return v;
    }
  }
}

// Modified Gram-Schmidt; returns an orthonormal basis of span(vectors).
std::vector<std::vector<float>> orthonormal_basis(const std::vector<std::vector<float>>& vectors) {
  const auto& k = kernels::active();
  std::vector<std::vector<float>> basis;
  for (const auto& v : vectors) {
    std::vector<float> u = v;
    for (const auto& q : basis) k.axpy(-k.dot(q.data(), u.data(), u.size()), q.data(), u.data(), u.size());
    const float n = std::sqrt(k.dot(u.data(), u.data(), u.size()));
    if (n < 1e-4f) continue;
    k.divide(u.data(), n, u.size());
    basis.push_back(std::move(u));
  }
  return basis;
}

void check_axis(std::size_t start, std::size_t extent, int velocity, std::size_t frames, std::size_t limit,
                const char* axis) {
  // Constant velocity: the extremes are frame 0 and the last frame.
  for (std::size_t f : {std::size_t{0}, frames - 1}) {
    const long long first = static_cast<long long>(start) + static_cast<long long>(f) * velocity;
    const long long last = first + static_cast<long long>(extent) - 1;
    if (first < 0 || last >= static_cast<long long>(limit)) {
      throw ParameterError(std::string("patch leaves the frame: ") + axis + " " + std::to_string(first) +
                           " out of bounds in frame " + std::to_string(f) + " (patch spans " +
                           std::to_string(first) + ".." + std::to_string(last) + ", extent " +
                           std::to_string(limit) + ")");
    }
  }
}

}  // namespace

MotionFixture synthesize_moving_patch(const MotionParams& p) {
  if (p.frames == 0 || p.height == 0 || p.width == 0 || p.channels == 0) {
    throw ParameterError("fixture extents must all be at least 1");
  }
  if (p.patch_height == 0 || p.patch_width == 0) throw ParameterError("patch extents must be at least 1");
  const std::size_t patch_tokens = p.patch_height * p.patch_width;
  if (patch_tokens >= p.channels) {
    throw ParameterError("patch has " + std::to_string(patch_tokens) + " tokens but only " +
                         std::to_string(p.channels) + " channels; need patch tokens < channels");
  }
  check_axis(p.start_row, p.patch_height, p.velocity_row, p.frames, p.height, "row");
  check_axis(p.start_col, p.patch_width, p.velocity_col, p.frames, p.width, "col");

  const VolumeShape shape{p.frames, p.height, p.width, p.channels};
  const auto& k = kernels::active();
  std::mt19937_64 rng(p.seed);

  std::vector<std::vector<float>> patch;
  patch.reserve(patch_tokens);
  for (std::size_t t = 0; t < patch_tokens; ++t) patch.push_back(unit_gaussian(rng, p.channels));
  const auto basis = orthonormal_basis(patch);

  std::vector<float> data(shape.values());
  for (std::size_t t = 0; t < shape.tokens(); ++t) {
    std::vector<float> b;
    for (float n = 0.0f; n < 1e-3f;) {
      b = unit_gaussian(rng, p.channels);
      for (const auto& q : basis) k.axpy(-k.dot(q.data(), b.data(), b.size()), q.data(), b.data(), b.size());
      n = std::sqrt(k.dot(b.data(), b.data(), b.size()));
      if (n >= 1e-3f) k.divide(b.data(), n, b.size());
    }
    std::copy(b.begin(), b.end(), data.begin() + static_cast<std::ptrdiff_t>(t * p.channels));
  }

  MotionFixture fx;
  fx.params = p;
  fx.displacement = static_cast<std::size_t>(std::max(std::abs(p.velocity_row), std::abs(p.velocity_col)));
  for (std::size_t f = 0; f < p.frames; ++f) {
    const long long r0 = static_cast<long long>(p.start_row) + static_cast<long long>(f) * p.velocity_row;
    const long long c0 = static_cast<long long>(p.start_col) + static_cast<long long>(f) * p.velocity_col;
    for (std::size_t pr = 0; pr < p.patch_height; ++pr) {
      for (std::size_t pc = 0; pc < p.patch_width; ++pc) {
        const TokenCoord at{static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(r0 + pr),
                            static_cast<std::uint32_t>(c0 + pc)};
        const auto& src = patch[pr * p.patch_width + pc];
        std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(flat_index(shape, at) * p.channels));
        const TokenCoord origin{0, static_cast<std::uint32_t>(p.start_row + pr), static_cast<std::uint32_t>(p.start_col + pc)};
        fx.ground_truth[origin].push_back(at);
      }
    }
  }
  fx.volume = FeatureVolume(shape, std::move(data), true);
  return fx;
}

FeatureVolume random_volume(VolumeShape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  std::vector<float> data(shape.values());
  for (float& x : data) x = gauss(rng);
  return FeatureVolume(shape, std::move(data), false);
}

}  // namespace cove
