#include "cove/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "cove/error.hpp"
#include "cove/kernels.hpp"
#include "cove/volume_io.hpp"

namespace cove {

namespace {

void paint(RgbImage& img, std::size_t row, std::size_t col, std::size_t scale, const Rgb& color) {
  for (std::size_t y = row * scale; y < (row + 1) * scale; ++y) {
    for (std::size_t x = col * scale; x < (col + 1) * scale; ++x) {
      std::copy(color.begin(), color.end(), img.pixels.begin() + static_cast<std::ptrdiff_t>((y * img.width + x) * 3));
    }
  }
}

}  // namespace

std::vector<RgbImage> render_trajectory(const CorrespondenceMap& map, const FeatureVolume* features,
                                        const VizSpec& spec) {
  const std::size_t n = map.frames(), h = map.height(), w = map.width();
  if (spec.scale < 1) throw ParameterError("viz scale must be at least 1");
  if (spec.anchor.frame >= n || spec.anchor.row >= h || spec.anchor.col >= w) {
    throw ParameterError("viz anchor outside the map grid");
  }
  if (features != nullptr && (features->shape().frames != n || features->shape().height != h ||
                              features->shape().width != w)) {
    throw ParameterError("viz features do not match the map grid");
  }

  std::vector<float> norms;
  float max_norm = 0.0f;
  if (features != nullptr) {
    const auto& k = kernels::active();
    const std::size_t d = features->shape().channels;
    norms.resize(features->shape().tokens());
    for (std::size_t t = 0; t < norms.size(); ++t) {
      const float* tok = features->data().data() + t * d;
      norms[t] = std::sqrt(k.dot(tok, tok, d));
      max_norm = std::max(max_norm, norms[t]);
    }
  }

  std::vector<RgbImage> images;
  images.reserve(n);
  for (std::size_t f = 0; f < n; ++f) {
    RgbImage img{w * spec.scale, h * spec.scale, {}};
    img.pixels.assign(img.width * img.height * 3, 96);
    for (std::size_t r = 0; r < h; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        std::uint8_t g = 96;
        if (max_norm > 0.0f) {
          g = static_cast<std::uint8_t>(std::lround(40.0f + 150.0f * norms[(f * h + r) * w + c] / max_norm));
        }
        paint(img, r, c, spec.scale, {g, g, g});
      }
    }
    if (f == spec.anchor.frame) {
      paint(img, spec.anchor.row, spec.anchor.col, spec.scale, spec.anchor_color);
    } else {
      const auto matches = map.matches(spec.anchor, f);
      for (std::size_t q = matches.size(); q-- > 0;) {
        paint(img, matches[q].row, matches[q].col, spec.scale, q == 0 ? spec.match_color : spec.secondary_color);
      }
    }
    images.push_back(std::move(img));
  }
  return images;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  const std::string header = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

std::vector<std::filesystem::path> write_trajectory_images(const CorrespondenceMap& map,
                                                           const FeatureVolume* features, const VizSpec& spec) {
  const auto images = render_trajectory(map, features, spec);
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw DataError("cannot create " + spec.out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t f = 0; f < images.size(); ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.ppm", f);
    paths.push_back(spec.out_dir / name);
    write_file(paths.back(), encode_ppm(images[f]));
  }
  return paths;
}

}  // namespace cove
