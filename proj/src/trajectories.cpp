#include <algorithm>
#include <string>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"
#include "cove/parallel.hpp"
#include "top_k_detail.hpp"

namespace cove {

CorrespondenceMap::CorrespondenceMap(std::size_t frames, std::size_t height, std::size_t width, std::size_t k,
                                     Window window)
    : frames_(frames), height_(height), width_(width), k_(k), window_(window) {
  if (frames < 2) throw ParameterError("a correspondence map needs at least 2 frames");
  if (height == 0 || width == 0) throw ParameterError("a correspondence map needs a nonempty grid");
  if (height > UINT16_MAX + 1u || width > UINT16_MAX + 1u) {
    throw ParameterError("grid exceeds the 16-bit coordinate range");
  }
  if (k < 1) throw ParameterError("K must be at least 1");
  const std::size_t n = frames * height * width * (frames - 1) * k;
  positions_.resize(n);
  scores_.resize(n);
}

std::size_t CorrespondenceMap::slot(TokenCoord anchor, std::size_t frame) const {
  if (anchor.frame >= frames_ || anchor.row >= height_ || anchor.col >= width_ || frame >= frames_ ||
      frame == anchor.frame) {
    throw ParameterError("correspondence lookup out of range or on the anchor's own frame");
  }
  const std::size_t a = (static_cast<std::size_t>(anchor.frame) * height_ + anchor.row) * width_ + anchor.col;
  const std::size_t j = frame < anchor.frame ? frame : frame - 1;
  return (a * (frames_ - 1) + j) * k_;
}

std::span<const GridPos> CorrespondenceMap::matches(TokenCoord anchor, std::size_t frame) const {
  return std::span<const GridPos>(positions_).subspan(slot(anchor, frame), k_);
}

std::span<GridPos> CorrespondenceMap::mutable_matches(TokenCoord anchor, std::size_t frame) {
  return std::span<GridPos>(positions_).subspan(slot(anchor, frame), k_);
}

std::span<const float> CorrespondenceMap::scores(TokenCoord anchor, std::size_t frame) const {
  if (scores_.empty()) return {};
  return std::span<const float>(scores_).subspan(slot(anchor, frame), k_);
}

std::span<float> CorrespondenceMap::mutable_scores(TokenCoord anchor, std::size_t frame) {
  if (scores_.empty()) return {};
  return std::span<float>(scores_).subspan(slot(anchor, frame), k_);
}

bool CorrespondenceMap::operator==(const CorrespondenceMap& other) const {
  return window_ == other.window_ && same_coordinates(*this, other);
}

bool same_coordinates(const CorrespondenceMap& a, const CorrespondenceMap& b) {
  return a.frames() == b.frames() && a.height() == b.height() && a.width() == b.width() && a.k() == b.k() &&
         std::equal(a.positions().begin(), a.positions().end(), b.positions().begin(), b.positions().end());
}

namespace {

// Top-K of one token's window in an adjacent frame, for every token of every
// source frame in one direction. Index: (pair * HW + token) * K.
struct RankedPairs {
  std::vector<GridPos> positions;
  std::vector<float> scores;
};

struct WorkerTally {
  std::uint64_t forward = 0;
  std::uint64_t backward = 0;
  std::size_t peak = 0;
};

}  // namespace

CorrespondenceMap trace_trajectories(const FeatureVolume& volume, const TraceOptions& options, TraceStats* stats) {
  const VolumeShape& s = volume.shape();
  if (!volume.normalized()) throw ParameterError("trace_trajectories requires a normalized feature volume");
  if (s.frames < 2) throw ParameterError("trace_trajectories requires at least 2 frames");
  if (options.k < 1) throw ParameterError("K must be at least 1");
  const std::size_t area = options.window.rows_in(s.height) * options.window.cols_in(s.width);
  if (options.k > area) {
    throw ParameterError("K = " + std::to_string(options.k) + " exceeds the " + std::to_string(area) +
                         " candidates in each window");
  }

  const auto& kern = kernels::table(options.isa);
  const std::size_t hw = s.frame_tokens();
  const std::size_t pairs = s.frames - 1;
  const std::size_t K = options.k;
  const std::size_t d = s.channels;

  RankedPairs ranked[2];
  for (auto& r : ranked) {
    r.positions.resize(pairs * hw * K);
    r.scores.resize(pairs * hw * K);
  }

  const std::size_t workers = resolve_threads(options.threads);
  std::vector<WorkerTally> tally(workers);

  // Direction 0 scores frame p against p + 1, direction 1 scores p + 1
  // against p. Both are stored under pair index p.
  parallel_for(2 * pairs * hw, workers, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    std::vector<float> window_scores(area);
    std::vector<std::uint32_t> scratch;
    std::vector<std::uint32_t> picked(K);
    WorkerTally& mine = tally[worker];
    for (std::size_t item = begin; item < end; ++item) {
      const std::size_t dir = item / (pairs * hw);
      const std::size_t pair = (item / hw) % pairs;
      const std::size_t t = item % hw;
      const std::size_t source = dir == 0 ? pair : pair + 1;
      const std::size_t target = dir == 0 ? pair + 1 : pair;
      const std::size_t h = t / s.width;
      const std::size_t w = t % s.width;

      const WindowRect rect = window_rect(s.height, s.width, h, w, options.window);
      const float* query = volume.frame_data(source) + t * d;
      const float* target_data = volume.frame_data(target);
      for (std::size_t r = 0; r < rect.rows; ++r) {
        kern.dot_rows(query, target_data + ((rect.row0 + r) * s.width + rect.col0) * d, rect.cols, d,
                      window_scores.data() + r * rect.cols);
      }
      const std::uint64_t ops = 2ull * d * rect.area();
      (dir == 0 ? mine.forward : mine.backward) += ops;
      mine.peak = std::max(mine.peak, rect.area());

      detail::top_k_indices(std::span<const float>(window_scores.data(), rect.area()), K, scratch, picked);
      const std::size_t at = (pair * hw + t) * K;
      for (std::size_t k = 0; k < K; ++k) {
        const std::uint32_t local = picked[k];
        ranked[dir].positions[at + k] = {static_cast<std::uint16_t>(rect.row0 + local / rect.cols),
                                         static_cast<std::uint16_t>(rect.col0 + local % rect.cols)};
        ranked[dir].scores[at + k] = window_scores[local];
      }
    }
  });

  CorrespondenceMap map(s.frames, s.height, s.width, K, options.window);
  parallel_for(s.tokens(), workers, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t a = begin; a < end; ++a) {
      const TokenCoord anchor = coord_of(s, a);
      const std::size_t start = static_cast<std::size_t>(anchor.row) * s.width + anchor.col;

      const auto follow = [&](std::size_t frame, const RankedPairs& rp, std::size_t pair, std::size_t& current) {
        const std::size_t at = (pair * hw + current) * K;
        auto pos = map.mutable_matches(anchor, frame);
        auto sc = map.mutable_scores(anchor, frame);
        std::copy_n(rp.positions.begin() + static_cast<std::ptrdiff_t>(at), K, pos.begin());
        std::copy_n(rp.scores.begin() + static_cast<std::ptrdiff_t>(at), K, sc.begin());
        current = static_cast<std::size_t>(pos[0].row) * s.width + pos[0].col;
      };

      std::size_t current = start;
      for (std::size_t j = anchor.frame + 1; j < s.frames; ++j) follow(j, ranked[0], j - 1, current);
      current = start;
      for (std::size_t j = anchor.frame; j-- > 0;) follow(j, ranked[1], j, current);
    }
  });

  if (stats != nullptr) {
    *stats = TraceStats{};
    for (const auto& t : tally) {
      stats->multiply_adds_forward += t.forward;
      stats->multiply_adds_backward += t.backward;
      stats->peak_candidates = std::max(stats->peak_candidates, t.peak);
    }
  }
  return map;
}

}  // namespace cove
