#include "cove/volume.hpp"

#include <cmath>
#include <string>

#include "cove/error.hpp"
#include "cove/kernels.hpp"

namespace cove {

DenseVolume::DenseVolume(VolumeShape shape, std::vector<float> data) : shape_(shape), data_(std::move(data)) {
  if (shape.frames == 0 || shape.height == 0 || shape.width == 0 || shape.channels == 0) {
    throw ParameterError("volume extents must all be at least 1");
  }
  if (data_.size() != shape.values()) {
    throw DataError("volume payload has " + std::to_string(data_.size()) + " values, shape requires " +
                    std::to_string(shape.values()));
  }
}

void check_finite(std::span<const float> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError("non-finite value at flat index " + std::to_string(i));
    }
  }
}

NormalizeResult normalize(const FeatureVolume& volume) {
  const auto& k = kernels::active();
  const VolumeShape& s = volume.shape();
  std::vector<float> out(volume.data().begin(), volume.data().end());
  std::vector<TokenCoord> zeros;
  for (std::size_t t = 0; t < s.tokens(); ++t) {
    float* tok = out.data() + t * s.channels;
    const float norm = std::sqrt(k.dot(tok, tok, s.channels));
    if (norm == 0.0f) {
      zeros.push_back(coord_of(s, t));
      continue;
    }
    k.divide(tok, norm, s.channels);
  }
  return {FeatureVolume(s, std::move(out), true), std::move(zeros)};
}

}  // namespace cove
