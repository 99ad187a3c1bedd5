#include <algorithm>
#include <numeric>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"
#include "top_k_detail.hpp"

namespace cove {

namespace detail {

void top_k_indices(std::span<const float> scores, std::size_t k, std::vector<std::uint32_t>& scratch,
                   std::span<std::uint32_t> out) {
  const std::size_t take = std::min(k, scores.size());
  if (take == 1) {
    // Strict > keeps the first (smallest index) of equal maxima.
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < scores.size(); ++i) {
      if (scores[i] > scores[best]) best = i;
    }
    out[0] = best;
    return;
  }
  scratch.resize(scores.size());
  std::iota(scratch.begin(), scratch.end(), 0u);
  const auto before = [&](std::uint32_t a, std::uint32_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  };
  std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(take), scratch.end(), before);
  std::copy_n(scratch.begin(), take, out.begin());
}

}  // namespace detail

std::vector<GridPos> top_k_argmax(std::span<const float> scores, std::size_t rows, std::size_t cols, std::size_t k) {
  if (k < 1) throw ParameterError("top-k requires K >= 1");
  if (rows == 0 || cols == 0 || scores.size() != rows * cols) {
    throw ParameterError("top-k requires a nonempty grid matching its score count");
  }
  std::vector<std::uint32_t> scratch;
  std::vector<std::uint32_t> idx(std::min(k, scores.size()));
  detail::top_k_indices(scores, k, scratch, idx);
  std::vector<GridPos> out;
  out.reserve(idx.size());
  for (std::uint32_t i : idx) {
    out.push_back({static_cast<std::uint16_t>(i / cols), static_cast<std::uint16_t>(i % cols)});
  }
  return out;
}

}  // namespace cove
