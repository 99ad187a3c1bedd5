// Exhaustive oracle. Deliberately shares nothing with the windowed tracer
// except the scalar reference dot product: every chain step rescans the whole
// adjacent frame and ranks it with a stable sort.
#include <algorithm>
#include <numeric>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"

namespace cove {

namespace {

struct Candidate {
  float score;
  std::size_t index;
};

std::vector<Candidate> rank_frame(const FeatureVolume& volume, std::size_t query_frame, std::size_t query_index,
                                  std::size_t target_frame) {
  const VolumeShape& s = volume.shape();
  const float* q = volume.frame_data(query_frame) + query_index * s.channels;
  std::vector<Candidate> all(s.frame_tokens());
  for (std::size_t t = 0; t < all.size(); ++t) {
    all[t] = {kernels::scalar::dot(q, volume.frame_data(target_frame) + t * s.channels, s.channels), t};
  }
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  return all;
}

}  // namespace

CorrespondenceMap full_reference_trajectories(const FeatureVolume& volume, std::size_t k) {
  const VolumeShape& s = volume.shape();
  if (!volume.normalized()) throw ParameterError("full_reference_trajectories requires a normalized volume");
  if (s.frames < 2) throw ParameterError("full_reference_trajectories requires at least 2 frames");
  if (k < 1 || k > s.frame_tokens()) throw ParameterError("K must lie in [1, H*W]");

  CorrespondenceMap map(s.frames, s.height, s.width, k, Window::full());
  for (std::size_t a = 0; a < s.tokens(); ++a) {
    const TokenCoord anchor = coord_of(s, a);
    for (int step : {+1, -1}) {
      std::size_t query_frame = anchor.frame;
      std::size_t query_index = static_cast<std::size_t>(anchor.row) * s.width + anchor.col;
      for (long long j = static_cast<long long>(anchor.frame) + step; j >= 0 && j < static_cast<long long>(s.frames);
           j += step) {
        const auto ranked = rank_frame(volume, query_frame, query_index, static_cast<std::size_t>(j));
        auto pos = map.mutable_matches(anchor, static_cast<std::size_t>(j));
        auto sc = map.mutable_scores(anchor, static_cast<std::size_t>(j));
        for (std::size_t r = 0; r < k; ++r) {
          pos[r] = {static_cast<std::uint16_t>(ranked[r].index / s.width),
                    static_cast<std::uint16_t>(ranked[r].index % s.width)};
          sc[r] = ranked[r].score;
        }
        query_frame = static_cast<std::size_t>(j);
        query_index = ranked[0].index;
      }
    }
  }
  return map;
}

}  // namespace cove
