#include <string>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"

namespace cove {

namespace {

void require_normalized(const FeatureVolume& volume, const char* op) {
  if (!volume.normalized()) throw ParameterError(std::string(op) + " requires a normalized feature volume");
}

}  // namespace

SimilarityMatrix similarity_full(const FeatureVolume& volume, std::size_t token_cap, kernels::Isa isa) {
  require_normalized(volume, "similarity_full");
  const VolumeShape& s = volume.shape();
  const std::size_t n = s.tokens();
  if (n > token_cap) {
    throw ParameterError("similarity_full is an oracle: " + std::to_string(n) + " tokens exceeds the cap of " +
                         std::to_string(token_cap));
  }
  const auto& k = kernels::table(isa);
  SimilarityMatrix m{n, std::vector<float>(n * n)};
  const float* base = volume.data().data();
  for (std::size_t a = 0; a < n; ++a) {
    const float* ta = base + a * s.channels;
    // Fill the upper triangle row by row, then mirror.
    k.dot_rows(ta, ta, n - a, s.channels, m.entries.data() + a * n + a);
    for (std::size_t b = a + 1; b < n; ++b) m.entries[b * n + a] = m.entries[a * n + b];
  }
  return m;
}

SimilarityBlock similarity_block(const FeatureVolume& volume, std::size_t source, std::size_t target, Window window,
                                 kernels::Isa isa) {
  require_normalized(volume, "similarity_block");
  const VolumeShape& s = volume.shape();
  if (source >= s.frames || target >= s.frames) {
    throw ParameterError("similarity block frames (" + std::to_string(source) + "," + std::to_string(target) +
                         ") out of range for " + std::to_string(s.frames) + " frames");
  }
  const auto& k = kernels::table(isa);
  SimilarityBlock block;
  block.source_frame = source;
  block.target_frame = target;
  block.height = s.height;
  block.width = s.width;
  block.window_rows = window.rows_in(s.height);
  block.window_cols = window.cols_in(s.width);
  block.windowed = !window.is_full();
  const std::size_t per = block.window_rows * block.window_cols;
  block.entries.resize(s.frame_tokens() * per);
  block.origins.resize(s.frame_tokens());

  const float* target_data = volume.frame_data(target);
  for (std::size_t h = 0; h < s.height; ++h) {
    for (std::size_t w = 0; w < s.width; ++w) {
      const std::size_t t = h * s.width + w;
      const WindowRect rect = window_rect(s.height, s.width, h, w, window);
      block.origins[t] = {static_cast<std::uint16_t>(rect.row0), static_cast<std::uint16_t>(rect.col0)};
      const float* query = volume.frame_data(source) + t * s.channels;
      float* out = block.entries.data() + t * per;
      for (std::size_t r = 0; r < rect.rows; ++r) {
        const float* row = target_data + ((rect.row0 + r) * s.width + rect.col0) * s.channels;
        k.dot_rows(query, row, rect.cols, s.channels, out + r * rect.cols);
      }
    }
  }
  return block;
}

SimilarityBlock similarity_adjacent(const FeatureVolume& volume, std::size_t i, kernels::Isa isa) {
  if (i + 1 >= volume.shape().frames) {
    throw ParameterError("similarity_adjacent frame " + std::to_string(i) + " has no successor (N = " +
                         std::to_string(volume.shape().frames) + ")");
  }
  return similarity_block(volume, i, i + 1, Window::full(), isa);
}

}  // namespace cove
