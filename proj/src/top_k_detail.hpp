#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cove::detail {

// Writes the indices of the min(k, scores.size()) largest scores into out,
// descending, equal scores by ascending index.
void top_k_indices(std::span<const float> scores, std::size_t k, std::vector<std::uint32_t>& scratch,
                   std::span<std::uint32_t> out);

}  // namespace cove::detail
