#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cove {

struct VolumeShape {
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t frame_tokens() const { return height * width; }
  std::size_t tokens() const { return frames * height * width; }
  std::size_t values() const { return tokens() * channels; }

  bool same_grid(const VolumeShape& other) const {
    return frames == other.frames && height == other.height && width == other.width;
  }
  bool operator==(const VolumeShape&) const = default;
};

struct TokenCoord {
  std::uint32_t frame = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  auto operator<=>(const TokenCoord&) const = default;
};

// Row-major (frame, row, col) index of a token.
inline std::size_t flat_index(const VolumeShape& s, TokenCoord c) {
  return (static_cast<std::size_t>(c.frame) * s.height + c.row) * s.width + c.col;
}

inline TokenCoord coord_of(const VolumeShape& s, std::size_t flat) {
  const std::size_t per_frame = s.frame_tokens();
  const std::size_t in_frame = flat % per_frame;
  return {static_cast<std::uint32_t>(flat / per_frame), static_cast<std::uint32_t>(in_frame / s.width),
          static_cast<std::uint32_t>(in_frame % s.width)};
}

inline bool in_bounds(const VolumeShape& s, TokenCoord c) {
  return c.frame < s.frames && c.row < s.height && c.col < s.width;
}

// Dense N x H x W x d float tensor stored in (frame, row, col, channel)
// order. Throws ParameterError on zero extents and DataError on a payload
// whose length does not match the shape.
class DenseVolume {
 public:
  DenseVolume() = default;
  DenseVolume(VolumeShape shape, std::vector<float> data);

  const VolumeShape& shape() const { return shape_; }
  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  std::span<const float> token(std::size_t flat) const {
    return std::span<const float>(data_).subspan(flat * shape_.channels, shape_.channels);
  }
  std::span<const float> token(TokenCoord c) const { return token(flat_index(shape_, c)); }
  std::span<float> mutable_token(std::size_t flat) {
    return std::span<float>(data_).subspan(flat * shape_.channels, shape_.channels);
  }

  const float* frame_data(std::size_t frame) const {
    return data_.data() + frame * shape_.frame_tokens() * shape_.channels;
  }

 private:
  VolumeShape shape_;
  std::vector<float> data_;
};

// The per-frame diffusion features used to establish correspondence.
class FeatureVolume : public DenseVolume {
 public:
  FeatureVolume() = default;
  FeatureVolume(VolumeShape shape, std::vector<float> data, bool normalized = false)
      : DenseVolume(shape, std::move(data)), normalized_(normalized) {}

  bool normalized() const { return normalized_; }

 private:
  bool normalized_ = false;
};

// Noisy latent tokens that correspondence-guided attention operates on. The
// timestep is a label carried through for callers; it does not affect math.
class LatentVolume : public DenseVolume {
 public:
  LatentVolume() = default;
  LatentVolume(VolumeShape shape, std::vector<float> data, int timestep = 0)
      : DenseVolume(shape, std::move(data)), timestep_(timestep) {}

  int timestep() const { return timestep_; }

 private:
  int timestep_ = 0;
};

struct NormalizeResult {
  FeatureVolume volume;
  std::vector<TokenCoord> zero_tokens;
};

// Divides every token by its L2 norm. Zero tokens stay zero and are listed
// in the result; they are not an error.
NormalizeResult normalize(const FeatureVolume& volume);

// Throws DataError naming the first non-finite value's flat index.
void check_finite(std::span<const float> values);

}  // namespace cove
