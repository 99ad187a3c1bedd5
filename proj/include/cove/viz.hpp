#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cove/correspondence.hpp"
#include "cove/volume.hpp"

namespace cove {

using Rgb = std::array<std::uint8_t, 3>;

struct VizSpec {
  TokenCoord anchor;
  std::filesystem::path out_dir;
  std::size_t scale = 1;  // pixels per token
  Rgb anchor_color{255, 0, 0};
  Rgb match_color{255, 255, 0};      // rank 1
  Rgb secondary_color{255, 140, 0};  // ranks 2..K
};

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB
};

// One image per frame. The background is gray, shaded by token norm when
// `features` is given; the anchor is marked in its own frame and its matches
// in every other frame, lower ranks drawn first so rank 1 stays visible.
std::vector<RgbImage> render_trajectory(const CorrespondenceMap& map, const FeatureVolume* features,
                                        const VizSpec& spec);

// Binary PPM (P6), maxval 255.
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);

// Writes frame_000.ppm ... into spec.out_dir and returns the paths.
std::vector<std::filesystem::path> write_trajectory_images(const CorrespondenceMap& map,
                                                           const FeatureVolume* features, const VizSpec& spec);

}  // namespace cove
