#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cove/volume.hpp"

namespace cove {

struct MotionParams {
  std::size_t frames = 4;
  std::size_t height = 8;
  std::size_t width = 8;
  std::size_t channels = 16;
  std::size_t patch_height = 2;
  std::size_t patch_width = 2;
  std::size_t start_row = 2;
  std::size_t start_col = 2;
  int velocity_row = 1;  // tokens per frame
  int velocity_col = 0;
  std::uint64_t seed = 0;
};

// A synthetic video: a patch of distinct unit tokens translating at constant
// velocity over an i.i.d. background that has been projected orthogonal to
// the patch tokens. Ground truth is exact.
struct MotionFixture {
  MotionParams params;
  FeatureVolume volume;  // normalized
  // frame-0 patch coordinate -> its coordinate in every frame (index = frame)
  std::map<TokenCoord, std::vector<TokenCoord>> ground_truth;
  // per-frame displacement in tokens, max(|dh|, |dw|)
  std::size_t displacement = 0;
};

// Throws ParameterError when the patch leaves the frame in any frame or when
// the patch holds at least as many tokens as there are channels (the
// background could not be made orthogonal to it).
MotionFixture synthesize_moving_patch(const MotionParams& params);

// Random N(0,1) volume, unnormalized. Test and bench helper.
FeatureVolume random_volume(VolumeShape shape, std::uint64_t seed);

}  // namespace cove
