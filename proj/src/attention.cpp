#include "cove/attention.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cove/error.hpp"
#include "cove/parallel.hpp"

namespace cove {

GatheredTokens gather_corr(const LatentVolume& latent, const CorrespondenceMap& map, TokenCoord anchor) {
  const VolumeShape& s = latent.shape();
  if (s.frames != map.frames() || s.height != map.height() || s.width != map.width()) {
    throw ParameterError("latent grid " + std::to_string(s.frames) + "x" + std::to_string(s.height) + "x" +
                         std::to_string(s.width) + " does not match the correspondence map grid " +
                         std::to_string(map.frames()) + "x" + std::to_string(map.height()) + "x" +
                         std::to_string(map.width()));
  }
  if (!in_bounds(s, anchor)) throw ParameterError("gather anchor outside the latent volume");

  GatheredTokens out;
  out.dim = s.channels;
  out.coords.reserve((s.frames - 1) * map.k());
  out.values.reserve((s.frames - 1) * map.k() * s.channels);
  for (std::size_t j = 0; j < s.frames; ++j) {
    if (j == anchor.frame) continue;
    for (const GridPos& p : map.matches(anchor, j)) {
      const TokenCoord c{static_cast<std::uint32_t>(j), p.row, p.col};
      const auto tok = latent.token(c);
      out.coords.push_back(c);
      out.values.insert(out.values.end(), tok.begin(), tok.end());
    }
  }
  return out;
}

std::vector<float> attention_weights(std::span<const float> query, const MergedTokenSet& merged, std::size_t d_k,
                                     bool proportional, kernels::Isa isa) {
  if (merged.count() == 0) throw ParameterError("attention needs at least one key");
  if (query.size() != merged.dim) {
    throw ParameterError("query has " + std::to_string(query.size()) + " channels, keys have " +
                         std::to_string(merged.dim));
  }
  if (d_k == 0) throw ParameterError("attention scale dimension must be positive");
  const auto& k = kernels::table(isa);
  const float scale = 1.0f / std::sqrt(static_cast<float>(d_k));

  std::vector<float> w(merged.count());
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] = k.dot(query.data(), merged.tokens.data() + m * merged.dim, merged.dim) * scale;
    if (proportional) w[m] += std::log(static_cast<float>(merged.sizes[m]));
  }
  const float top = *std::max_element(w.begin(), w.end());
  float total = 0.0f;
  for (float& x : w) {
    x = std::exp(x - top);
    total += x;
  }
  for (float& x : w) x /= total;
  return w;
}

std::vector<float> corr_guided_attention(std::span<const float> query, const MergedTokenSet& merged, std::size_t d_k,
                                         bool proportional, kernels::Isa isa) {
  const auto w = attention_weights(query, merged, d_k, proportional, isa);
  const auto& k = kernels::table(isa);
  std::vector<float> out(merged.dim, 0.0f);
  for (std::size_t m = 0; m < w.size(); ++m) k.axpy(w[m], merged.tokens.data() + m * merged.dim, out.data(), merged.dim);
  return out;
}

LatentVolume apply_frame_attention(const LatentVolume& latent, const CorrespondenceMap& map,
                                   const AttentionOptions& options) {
  const VolumeShape& s = latent.shape();
  if (s.frames != map.frames() || s.height != map.height() || s.width != map.width()) {
    throw ParameterError("latent grid does not match the correspondence map grid");
  }
  if (!(options.merge_ratio >= 0.0 && options.merge_ratio < 1.0)) {
    throw ParameterError("merge ratio must lie in [0, 1) (got " + std::to_string(options.merge_ratio) + ")");
  }
  const std::size_t d_k = options.scale_dim == 0 ? s.channels : options.scale_dim;

  std::vector<float> out(s.values());
  parallel_for(s.tokens(), options.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t t = begin; t < end; ++t) {
      const TokenCoord anchor = coord_of(s, t);
      const GatheredTokens gathered = gather_corr(latent, map, anchor);
      const MergedTokenSet merged = merge_tokens(gathered, options.merge_ratio, options.isa);
      const auto result = corr_guided_attention(latent.token(t), merged, d_k, options.proportional, options.isa);
      std::copy(result.begin(), result.end(), out.begin() + static_cast<std::ptrdiff_t>(t * s.channels));
    }
  });
  return LatentVolume(s, std::move(out), latent.timestep());
}

}  // namespace cove
