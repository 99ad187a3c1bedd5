#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cove/kernels.hpp"
#include "cove/volume.hpp"

namespace cove {

// Side length of the square search window, or the whole frame.
class Window {
 public:
  static Window full() { return Window(0); }
  // Throws ParameterError for length < 1.
  static Window of(std::size_t length);

  bool is_full() const { return length_ == 0; }
  // 0 when full.
  std::size_t length() const { return length_; }

  std::size_t rows_in(std::size_t height) const { return is_full() ? height : std::min(length_, height); }
  std::size_t cols_in(std::size_t width) const { return is_full() ? width : std::min(length_, width); }

  bool operator==(const Window&) const = default;

 private:
  explicit Window(std::size_t length) : length_(length) {}
  std::size_t length_;
};

struct GridPos {
  std::uint16_t row = 0;
  std::uint16_t col = 0;
  auto operator<=>(const GridPos&) const = default;
};

// Axis-aligned window in a frame: rows [row0, row0 + rows), cols likewise.
struct WindowRect {
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t area() const { return rows * cols; }
  bool operator==(const WindowRect&) const = default;
};

// Window of nominal extent l centered on (row, col). The start is
// center - (l - 1) / 2, so odd l reaches l/2 each way and even l puts the
// extra token on the high side. A window that would cross an edge is shifted
// inward so it always spans min(l, H) x min(l, W) tokens.
WindowRect window_rect(std::size_t height, std::size_t width, std::size_t center_row, std::size_t center_col,
                       Window window);

// Read-only view of the tokens of one frame inside a window.
struct WindowView {
  const DenseVolume* volume = nullptr;
  std::size_t frame = 0;
  WindowRect rect;

  TokenCoord absolute(std::size_t local_row, std::size_t local_col) const {
    return {static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(rect.row0 + local_row),
            static_cast<std::uint32_t>(rect.col0 + local_col)};
  }
  std::span<const float> token(std::size_t local_row, std::size_t local_col) const {
    return volume->token(absolute(local_row, local_col));
  }
};

// Throws ParameterError when the center is outside the frame or frame is out
// of range.
WindowView window_crop(const DenseVolume& volume, std::size_t frame, std::size_t center_row, std::size_t center_col,
                       Window window);

// Coordinates of the min(k, rows * cols) largest scores in a row-major grid,
// largest first. Equal scores are ordered by smaller row-major index.
std::vector<GridPos> top_k_argmax(std::span<const float> scores, std::size_t rows, std::size_t cols, std::size_t k);

// Dense (N*H*W) x (N*H*W) cosine similarities of a normalized volume.
struct SimilarityMatrix {
  std::size_t tokens = 0;
  std::vector<float> entries;
  float at(std::size_t a, std::size_t b) const { return entries[a * tokens + b]; }
};

inline constexpr std::size_t kDefaultFullSimilarityCap = 16384;

// Throws ParameterError if the volume holds more than `token_cap` tokens or
// is not normalized.
SimilarityMatrix similarity_full(const FeatureVolume& volume, std::size_t token_cap = kDefaultFullSimilarityCap,
                                 kernels::Isa isa = kernels::best_isa());

// Similarities from each token of `source` to the tokens of `target` inside
// that token's window. For a full window every origin is (0, 0).
struct SimilarityBlock {
  std::size_t source_frame = 0;
  std::size_t target_frame = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t window_rows = 0;
  std::size_t window_cols = 0;
  bool windowed = false;
  std::vector<float> entries;   // [h][w][window_rows][window_cols]
  std::vector<GridPos> origins;  // per source token

  std::span<const float> row(std::size_t source_row, std::size_t source_col) const {
    const std::size_t n = window_rows * window_cols;
    return std::span<const float>(entries).subspan((source_row * width + source_col) * n, n);
  }
};

SimilarityBlock similarity_block(const FeatureVolume& volume, std::size_t source, std::size_t target, Window window,
                                 kernels::Isa isa = kernels::best_isa());

// Full block S_i between frame i and frame i + 1.
SimilarityBlock similarity_adjacent(const FeatureVolume& volume, std::size_t i,
                                    kernels::Isa isa = kernels::best_isa());

// For every anchor token and every other frame, K coordinates ranked by
// descending similarity. Scores are kept in memory only; they are not part
// of the serialized form.
class CorrespondenceMap {
 public:
  CorrespondenceMap() = default;
  CorrespondenceMap(std::size_t frames, std::size_t height, std::size_t width, std::size_t k, Window window);

  std::size_t frames() const { return frames_; }
  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t k() const { return k_; }
  Window window() const { return window_; }
  bool has_scores() const { return !scores_.empty(); }

  // Matches of `anchor` in `frame`; frame must differ from anchor.frame.
  std::span<const GridPos> matches(TokenCoord anchor, std::size_t frame) const;
  std::span<GridPos> mutable_matches(TokenCoord anchor, std::size_t frame);
  std::span<const float> scores(TokenCoord anchor, std::size_t frame) const;
  std::span<float> mutable_scores(TokenCoord anchor, std::size_t frame);

  // Raw storage in serialization order: anchor row-major, frame ascending
  // skipping the anchor's frame, then rank.
  std::span<const GridPos> positions() const { return positions_; }
  std::span<GridPos> mutable_positions() { return positions_; }

  void drop_scores() { scores_.clear(); }

  // Grid, K, window and every coordinate equal. Scores are ignored.
  bool operator==(const CorrespondenceMap& other) const;

 private:
  std::size_t slot(TokenCoord anchor, std::size_t frame) const;

  std::size_t frames_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t k_ = 0;
  Window window_ = Window::full();
  std::vector<GridPos> positions_;
  std::vector<float> scores_;
};

// True when both maps cover the same grid and K and agree on every
// coordinate at every rank, regardless of the window they were built with.
bool same_coordinates(const CorrespondenceMap& a, const CorrespondenceMap& b);

// Integer work tallies for the similarity pass. A multiply-accumulate counts
// as two operations.
struct TraceStats {
  std::uint64_t multiply_adds_forward = 0;
  std::uint64_t multiply_adds_backward = 0;
  std::size_t peak_candidates = 0;
  std::uint64_t multiply_adds() const { return multiply_adds_forward + multiply_adds_backward; }
};

struct TraceOptions {
  std::size_t k = 3;
  Window window = Window::of(9);
  std::size_t threads = 0;  // 0 = all hardware threads
  kernels::Isa isa = kernels::best_isa();
};

// Sliding-window chained correspondence. Each frame pair's windowed
// similarities are computed once per source token; a chain then re-anchors
// on the top-1 match frame by frame, forward to the last frame and backward
// to frame 0. Output is independent of the thread count.
CorrespondenceMap trace_trajectories(const FeatureVolume& volume, const TraceOptions& options,
                                     TraceStats* stats = nullptr);

// Exhaustive twin of trace_trajectories with an unrestricted window, written
// as plain loops over the scalar reference dot product. Used as an oracle.
CorrespondenceMap full_reference_trajectories(const FeatureVolume& volume, std::size_t k);

}  // namespace cove
