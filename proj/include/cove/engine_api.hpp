#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cove/correspondence.hpp"
#include "cove/volume.hpp"

// Buffer-level entry points for host-language bindings. Inputs are
// caller-owned contiguous f32 arrays in (frame, row, col, channel) order and
// are never written. Results are freshly allocated.
//
// Dense correspondence arrays are int32 with shape (N, H, W, N, K, 2): for
// anchor (i, h, w) and frame j, K (row, col) pairs. The j == i slice holds the
// anchor's own coordinate K times.
namespace cove::engine {

const char* version();

std::vector<std::int32_t> to_dense(const CorrespondenceMap& map);
// Throws DataError if the array size or any coordinate is inconsistent.
CorrespondenceMap from_dense(std::span<const std::int32_t> dense, std::size_t frames, std::size_t height,
                             std::size_t width, std::size_t k, Window window);

// Normalizes a copy of the buffer and traces it; same result as loading the
// same bytes from a COVF file and running `cove corr`.
std::vector<std::int32_t> trace(std::span<const float> features, VolumeShape shape, std::size_t k, Window window,
                                std::size_t threads = 0);

std::vector<float> attend(std::span<const float> latent, VolumeShape shape, std::span<const std::int32_t> dense,
                          std::size_t k, double ratio, std::size_t d_k = 0, bool proportional = false,
                          std::size_t threads = 0);

}  // namespace cove::engine
