#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cove/correspondence.hpp"
#include "cove/kernels.hpp"
#include "cove/volume.hpp"

namespace cove {

// Latent tokens at an anchor's corresponding coordinates, ordered by frame
// ascending then rank ascending.
struct GatheredTokens {
  std::size_t dim = 0;
  std::vector<float> values;  // count x dim
  std::vector<TokenCoord> coords;

  std::size_t count() const { return coords.size(); }
  std::span<const float> token(std::size_t i) const {
    return std::span<const float>(values).subspan(i * dim, dim);
  }
};

// Throws ParameterError when the map grid differs from the latent grid or
// the anchor is out of bounds. The anchor's own frame is never gathered.
GatheredTokens gather_corr(const LatentVolume& latent, const CorrespondenceMap& map, TokenCoord anchor);

struct MergedTokenSet {
  std::size_t dim = 0;
  std::vector<float> tokens;  // count x dim
  std::vector<std::uint32_t> sizes;
  std::vector<std::vector<TokenCoord>> provenance;

  std::size_t count() const { return sizes.size(); }
  std::span<const float> token(std::size_t i) const {
    return std::span<const float>(tokens).subspan(i * dim, dim);
  }
};

// Bipartite soft matching over list positions: even positions form set A,
// odd positions set B. Each A token proposes one edge to its most similar B
// token (cosine; ties to the smaller B position), and the floor(ratio * |A|)
// best edges (ties to the smaller A position) are merged as size-weighted
// means. Survivors keep their original relative order.
//
// Throws ParameterError for an empty list or ratio outside [0, 1).
MergedTokenSet merge_tokens(const GatheredTokens& tokens, double ratio, kernels::Isa isa = kernels::best_isa());

// softmax(query . K^T / sqrt(d_k)) with the max logit subtracted first. With
// `proportional` each logit gains log(size) so a merged token weighs like
// the tokens it absorbed.
std::vector<float> attention_weights(std::span<const float> query, const MergedTokenSet& merged, std::size_t d_k,
                                     bool proportional = false, kernels::Isa isa = kernels::best_isa());

// Attention of one query over the merged set, keys = values = merged tokens.
std::vector<float> corr_guided_attention(std::span<const float> query, const MergedTokenSet& merged, std::size_t d_k,
                                         bool proportional = false, kernels::Isa isa = kernels::best_isa());

struct AttentionOptions {
  double merge_ratio = 0.5;
  std::size_t scale_dim = 0;  // d_k; 0 = latent channel count
  bool proportional = false;
  std::size_t threads = 0;  // 0 = all hardware threads
  kernels::Isa isa = kernels::best_isa();
};

// Gather, merge and attend for every token. All queries read the input
// volume; results go to a fresh volume. No residual is added.
LatentVolume apply_frame_attention(const LatentVolume& latent, const CorrespondenceMap& map,
                                   const AttentionOptions& options = {});

}  // namespace cove
