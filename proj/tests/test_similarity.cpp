#include <doctest.h>

#include <cmath>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"
#include "test_support.hpp"

using namespace cove;

TEST_CASE("similarity_full matches a scalar-loop oracle") {
  const FeatureVolume vol = test::random_normalized({2, 2, 2, 4}, 1);
  for (kernels::Isa isa : kernels::available_isas()) {
    const SimilarityMatrix m = similarity_full(vol, kDefaultFullSimilarityCap, isa);
    REQUIRE(m.tokens == 8);
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        const double want = test::naive_dot(vol.token(a).data(), vol.token(b).data(), 4);
        CHECK(std::abs(m.at(a, b) - want) <= 1e-6);
        CHECK(m.at(a, b) == m.at(b, a));
      }
      CHECK(std::abs(m.at(a, a) - 1.0f) <= 1e-5f);
    }
  }
}

TEST_CASE("similarity_full: duplicated frames and orthogonal tokens") {
  const FeatureVolume dup = test::static_volume({2, 3, 2, 5}, 2);
  const SimilarityMatrix m = similarity_full(dup);
  const std::size_t per = 6;
  for (std::size_t a = 0; a < per; ++a) {
    for (std::size_t b = 0; b < per; ++b) CHECK(m.at(a, per + b) == m.at(a, b));
  }

  std::vector<float> eye(4 * 4, 0.0f);
  for (std::size_t i = 0; i < 4; ++i) eye[i * 4 + i] = 1.0f;
  const FeatureVolume ortho({1, 2, 2, 4}, eye, true);
  const SimilarityMatrix id = similarity_full(ortho);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) CHECK(id.at(a, b) == (a == b ? 1.0f : 0.0f));
  }
}

TEST_CASE("similarity_full refuses large or unnormalized volumes") {
  const FeatureVolume vol = test::random_normalized({2, 4, 4, 2}, 3);
  CHECK_THROWS_WITH_AS(similarity_full(vol, 31), doctest::Contains("oracle"), ParameterError);
  CHECK_NOTHROW(similarity_full(vol, 32));
  CHECK_THROWS_AS(similarity_full(random_volume({1, 1, 1, 2}, 0)), ParameterError);
}

TEST_CASE("similarity_adjacent: identical frames give unit self-match") {
  const FeatureVolume vol = test::static_volume({3, 4, 4, 8}, 4);
  const SimilarityBlock s = similarity_adjacent(vol, 1);
  CHECK(s.source_frame == 1);
  CHECK(s.target_frame == 2);
  CHECK_FALSE(s.windowed);
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t w = 0; w < 4; ++w) CHECK(std::abs(s.row(h, w)[h * 4 + w] - 1.0f) <= 1e-5f);
  }
}

TEST_CASE("similarity_adjacent: zero successor frame gives zeros") {
  FeatureVolume base = test::random_normalized({2, 3, 3, 4}, 5);
  std::vector<float> data(base.data().begin(), base.data().end());
  std::fill(data.begin() + 9 * 4, data.end(), 0.0f);
  const FeatureVolume vol = normalize(FeatureVolume({2, 3, 3, 4}, data)).volume;
  const SimilarityBlock s = similarity_adjacent(vol, 0);
  for (float x : s.entries) CHECK(x == 0.0f);
}

TEST_CASE("similarity_adjacent equals the matching block of similarity_full") {
  const FeatureVolume vol = test::random_normalized({2, 4, 4, 8}, 6);
  const SimilarityMatrix full = similarity_full(vol);
  const SimilarityBlock s = similarity_adjacent(vol, 0);
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) CHECK(std::abs(s.entries[a * 16 + b] - full.at(a, 16 + b)) <= 1e-6f);
  }
  CHECK_THROWS_AS(similarity_adjacent(vol, 1), ParameterError);
}

TEST_CASE("adjacent block transposed equals the backward block") {
  const FeatureVolume vol = test::random_normalized({3, 5, 4, 9}, 7);
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    const SimilarityBlock fwd = similarity_adjacent(vol, i);
    const SimilarityBlock bwd = similarity_block(vol, i + 1, i, Window::full());
    for (std::size_t a = 0; a < 20; ++a) {
      for (std::size_t b = 0; b < 20; ++b) CHECK(std::abs(fwd.entries[a * 20 + b] - bwd.entries[b * 20 + a]) <= 1e-6f);
    }
  }
}

TEST_CASE("windowed block records clamped origins and matches full entries") {
  const FeatureVolume vol = test::random_normalized({2, 7, 6, 5}, 8);
  const SimilarityBlock win = similarity_block(vol, 0, 1, Window::of(3));
  const SimilarityBlock full = similarity_adjacent(vol, 0);
  CHECK(win.windowed);
  CHECK(win.window_rows == 3);
  CHECK(win.window_cols == 3);
  for (std::size_t h = 0; h < 7; ++h) {
    for (std::size_t w = 0; w < 6; ++w) {
      const WindowRect rect = window_rect(7, 6, h, w, Window::of(3));
      const GridPos o = win.origins[h * 6 + w];
      CHECK(o.row == rect.row0);
      CHECK(o.col == rect.col0);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
          CHECK(win.row(h, w)[r * 3 + c] == full.row(h, w)[(o.row + r) * 6 + o.col + c]);
        }
      }
    }
  }
}

TEST_CASE("similarities of normalized inputs stay within [-1, 1]") {
  const FeatureVolume vol = test::random_normalized({3, 4, 4, 3}, 9);
  for (float x : similarity_full(vol).entries) {
    CHECK(x >= -1.0f - 1e-5f);
    CHECK(x <= 1.0f + 1e-5f);
  }
}
