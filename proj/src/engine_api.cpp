#include "cove/engine_api.hpp"

#include <string>

#include "cove/attention.hpp"
#include "cove/error.hpp"
#include "cove/version.hpp"

namespace cove::engine {

const char* version() { return kVersion; }

std::vector<std::int32_t> to_dense(const CorrespondenceMap& map) {
  const std::size_t n = map.frames(), h = map.height(), w = map.width(), k = map.k();
  std::vector<std::int32_t> out;
  out.reserve(n * h * w * n * k * 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t r = 0; r < h; ++r) {
      for (std::uint32_t c = 0; c < w; ++c) {
        const TokenCoord anchor{i, r, c};
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) {
            for (std::size_t q = 0; q < k; ++q) {
              out.push_back(static_cast<std::int32_t>(r));
              out.push_back(static_cast<std::int32_t>(c));
            }
            continue;
          }
          for (const GridPos& p : map.matches(anchor, j)) {
            out.push_back(p.row);
            out.push_back(p.col);
          }
        }
      }
    }
  }
  return out;
}

CorrespondenceMap from_dense(std::span<const std::int32_t> dense, std::size_t frames, std::size_t height,
                             std::size_t width, std::size_t k, Window window) {
  CorrespondenceMap map(frames, height, width, k, window);
  map.drop_scores();
  if (dense.size() != frames * height * width * frames * k * 2) {
    throw DataError("dense correspondence array has " + std::to_string(dense.size()) + " entries, expected " +
                    std::to_string(frames * height * width * frames * k * 2));
  }
  std::size_t at = 0;
  for (std::uint32_t i = 0; i < frames; ++i) {
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        for (std::size_t j = 0; j < frames; ++j) {
          if (j == i) {
            at += 2 * k;
            continue;
          }
          auto slot = map.mutable_matches({i, r, c}, j);
          for (std::size_t q = 0; q < k; ++q, at += 2) {
            const std::int32_t row = dense[at], col = dense[at + 1];
            if (row < 0 || col < 0 || static_cast<std::size_t>(row) >= height ||
                static_cast<std::size_t>(col) >= width) {
              throw DataError("dense correspondence coordinate out of bounds at entry " + std::to_string(at));
            }
            slot[q] = {static_cast<std::uint16_t>(row), static_cast<std::uint16_t>(col)};
          }
        }
      }
    }
  }
  return map;
}

std::vector<std::int32_t> trace(std::span<const float> features, VolumeShape shape, std::size_t k, Window window,
                                std::size_t threads) {
  FeatureVolume raw(shape, std::vector<float>(features.begin(), features.end()));
  check_finite(raw.data());
  const FeatureVolume volume = normalize(raw).volume;
  return to_dense(trace_trajectories(volume, TraceOptions{k, window, threads}));
}

std::vector<float> attend(std::span<const float> latent, VolumeShape shape, std::span<const std::int32_t> dense,
                          std::size_t k, double ratio, std::size_t d_k, bool proportional, std::size_t threads) {
  LatentVolume volume(shape, std::vector<float>(latent.begin(), latent.end()));
  check_finite(volume.data());
  const CorrespondenceMap map = from_dense(dense, shape.frames, shape.height, shape.width, k, Window::full());
  AttentionOptions opts;
  opts.merge_ratio = ratio;
  opts.scale_dim = d_k;
  opts.proportional = proportional;
  opts.threads = threads;
  const LatentVolume out = apply_frame_attention(volume, map, opts);
  return std::vector<float>(out.data().begin(), out.data().end());
}

}  // namespace cove::engine
