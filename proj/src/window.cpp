#include <algorithm>
#include <string>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"

namespace cove {

Window Window::of(std::size_t length) {
  if (length < 1) throw ParameterError("window length must be at least 1 (got " + std::to_string(length) + ")");
  return Window(length);
}

namespace {

// Start of a clamp-with-shift span of `extent` tokens on an axis of `size`.
std::size_t span_start(std::size_t center, std::size_t nominal, std::size_t extent, std::size_t size) {
  const std::size_t reach_low = (nominal - 1) / 2;
  const std::size_t start = center > reach_low ? center - reach_low : 0;
  return std::min(start, size - extent);
}

}  // namespace

WindowRect window_rect(std::size_t height, std::size_t width, std::size_t center_row, std::size_t center_col,
                       Window window) {
  if (window.is_full()) return {0, 0, height, width};
  const std::size_t rows = window.rows_in(height);
  const std::size_t cols = window.cols_in(width);
  return {span_start(center_row, window.length(), rows, height), span_start(center_col, window.length(), cols, width),
          rows, cols};
}

WindowView window_crop(const DenseVolume& volume, std::size_t frame, std::size_t center_row, std::size_t center_col,
                       Window window) {
  const VolumeShape& s = volume.shape();
  if (frame >= s.frames) throw ParameterError("window frame " + std::to_string(frame) + " out of range");
  if (center_row >= s.height || center_col >= s.width) {
    throw ParameterError("window center (" + std::to_string(center_row) + "," + std::to_string(center_col) +
                         ") outside the frame");
  }
  return {&volume, frame, window_rect(s.height, s.width, center_row, center_col, window)};
}

}  // namespace cove
