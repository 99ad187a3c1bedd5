#include "cove/op_count.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cove/error.hpp"

namespace cove {

namespace {

void check_extents(const OpConfig& c) {
  if (c.frames == 0 || c.height == 0 || c.width == 0 || c.channels == 0) {
    throw ParameterError("op count extents must all be positive");
  }
}

}  // namespace

std::uint64_t analytic_ops(const OpConfig& c) {
  check_extents(c);
  if (!c.window.is_full() && c.window.length() > std::min(c.height, c.width)) {
    throw ParameterError("window length " + std::to_string(c.window.length()) + " exceeds min(H, W) = " +
                         std::to_string(std::min(c.height, c.width)));
  }
  return analytic_ops_clamped(c);
}

std::uint64_t analytic_ops_clamped(const OpConfig& c) {
  check_extents(c);
  const std::uint64_t candidates = static_cast<std::uint64_t>(c.window.rows_in(c.height)) * c.window.cols_in(c.width);
  return 2ull * c.channels * (c.frames - 1) * c.height * c.width * candidates;
}

std::uint64_t analytic_ops_all_pairs(const OpConfig& c) {
  check_extents(c);
  const std::uint64_t tokens = static_cast<std::uint64_t>(c.frames) * c.height * c.width;
  return 2ull * c.channels * tokens * tokens;
}

OpCountReport analytic_report(const OpConfig& c) {
  OpCountReport r;
  r.config = c;
  r.analytic_forward = analytic_ops_clamped(c);
  r.analytic_both = 2 * r.analytic_forward;
  r.all_pairs = analytic_ops_all_pairs(c);
  return r;
}

OpCountReport measured_ops(const OpConfig& c, std::size_t threads, kernels::Isa isa) {
  OpCountReport r = analytic_report(c);
  if (c.frames < 2) throw ParameterError("measured op counts need at least 2 frames");

  // Counts do not depend on content; any fixed nonzero fill will do.
  const VolumeShape shape{c.frames, c.height, c.width, c.channels};
  std::vector<float> data(shape.values());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = std::sin(0.37f * static_cast<float>(i % 9973) + 0.1f);
  const FeatureVolume volume = normalize(FeatureVolume(shape, std::move(data))).volume;

  TraceStats stats;
  trace_trajectories(volume, TraceOptions{1, c.window, threads, isa}, &stats);
  r.measured = true;
  r.measured_forward = stats.multiply_adds_forward;
  r.measured_both = stats.multiply_adds();
  r.peak_candidates = stats.peak_candidates;
  return r;
}

}  // namespace cove
