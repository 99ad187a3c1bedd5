#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cove/attention.hpp"
#include "cove/error.hpp"

namespace cove {

MergedTokenSet merge_tokens(const GatheredTokens& tokens, double ratio, kernels::Isa isa) {
  const std::size_t n = tokens.count();
  if (n == 0) throw ParameterError("merge_tokens requires a nonempty token list");
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw ParameterError("merge ratio must lie in [0, 1) (got " + std::to_string(ratio) + ")");
  }
  const auto& k = kernels::table(isa);
  const std::size_t dim = tokens.dim;
  const std::size_t count_a = (n + 1) / 2;
  const std::size_t count_b = n / 2;
  const std::size_t merges = count_b == 0 ? 0 : static_cast<std::size_t>(std::floor(ratio * count_a));

  // target[p] = position of the B token that p is merged into, or p itself.
  std::vector<std::size_t> target(n);
  std::iota(target.begin(), target.end(), 0);

  if (merges > 0) {
    std::vector<float> norm(n);
    for (std::size_t p = 0; p < n; ++p) {
      const float* t = tokens.values.data() + p * dim;
      norm[p] = std::sqrt(k.dot(t, t, dim));
    }
    std::vector<std::size_t> best_b(count_a);
    std::vector<float> best_score(count_a);
    for (std::size_t a = 0; a < count_a; ++a) {
      const std::size_t pa = 2 * a;
      float best = -INFINITY;
      for (std::size_t b = 0; b < count_b; ++b) {
        const std::size_t pb = 2 * b + 1;
        const float denom = norm[pa] * norm[pb];
        const float cos =
            denom == 0.0f ? 0.0f : k.dot(tokens.values.data() + pa * dim, tokens.values.data() + pb * dim, dim) / denom;
        if (cos > best) {
          best = cos;
          best_b[a] = pb;
        }
      }
      best_score[a] = best;
    }
    std::vector<std::size_t> order(count_a);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return best_score[x] > best_score[y]; });
    for (std::size_t m = 0; m < merges; ++m) target[2 * order[m]] = best_b[order[m]];
  }

  MergedTokenSet out;
  out.dim = dim;
  std::vector<std::size_t> slot_of(n, SIZE_MAX);
  for (std::size_t p = 0; p < n; ++p) {
    if (target[p] != p) continue;
    slot_of[p] = out.sizes.size();
    out.sizes.push_back(0);
    out.provenance.emplace_back();
  }
  out.tokens.assign(out.sizes.size() * dim, 0.0f);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t s = slot_of[target[p]];
    k.axpy(1.0f, tokens.values.data() + p * dim, out.tokens.data() + s * dim, dim);
    out.sizes[s] += 1;
    out.provenance[s].push_back(tokens.coords[p]);
  }
  for (std::size_t s = 0; s < out.sizes.size(); ++s) {
    if (out.sizes[s] > 1) k.divide(out.tokens.data() + s * dim, static_cast<float>(out.sizes[s]), dim);
  }
  return out;
}

}  // namespace cove
