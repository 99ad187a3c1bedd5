#pragma once

#include <cstddef>
#include <cstdint>

#include "cove/correspondence.hpp"
#include "cove/kernels.hpp"

namespace cove {

struct OpConfig {
  std::size_t frames = 20;
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t channels = 320;
  Window window = Window::of(9);
};

// Multiply-add totals for one chained correspondence pass, forward only.
// A multiply-accumulate counts 2; top-K selection is not counted.
//   windowed:      2 d (N-1) H W l^2
//   full window:   2 d (N-1) (H W)^2
// Throws ParameterError on zero extents or a window longer than min(H, W).
std::uint64_t analytic_ops(const OpConfig& config);

// Same, with the window clamped to the frame: 2 d (N-1) H W min(l,H) min(l,W).
std::uint64_t analytic_ops_clamped(const OpConfig& config);

// Dense all-pairs similarity over the whole video: 2 d (N H W)^2.
std::uint64_t analytic_ops_all_pairs(const OpConfig& config);

struct OpCountReport {
  OpConfig config;
  std::uint64_t analytic_forward = 0;
  std::uint64_t analytic_both = 0;  // forward + backward
  std::uint64_t all_pairs = 0;
  bool measured = false;
  std::uint64_t measured_forward = 0;
  std::uint64_t measured_both = 0;
  std::size_t peak_candidates = 0;
};

// Analytic figures only.
OpCountReport analytic_report(const OpConfig& config);

// Runs trace_trajectories (K = 1) with instrumented counters on a
// deterministic volume of the configured shape and reports both figures.
OpCountReport measured_ops(const OpConfig& config, std::size_t threads = 0, kernels::Isa isa = kernels::best_isa());

}  // namespace cove
