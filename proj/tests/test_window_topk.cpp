#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cove/correspondence.hpp"
#include "cove/error.hpp"
#include "test_support.hpp"

using namespace cove;

TEST_CASE("window interior: odd l reaches l/2 each way") {
  const WindowRect r = window_rect(64, 64, 32, 32, Window::of(9));
  CHECK(r == WindowRect{28, 28, 9, 9});
}

TEST_CASE("window corner: clamp-with-shift keeps the full extent") {
  CHECK(window_rect(64, 64, 0, 0, Window::of(9)) == WindowRect{0, 0, 9, 9});
  CHECK(window_rect(64, 64, 63, 63, Window::of(9)) == WindowRect{55, 55, 9, 9});
  CHECK(window_rect(64, 64, 2, 61, Window::of(9)) == WindowRect{0, 55, 9, 9});
}

TEST_CASE("window larger than the frame covers the frame") {
  CHECK(window_rect(4, 4, 1, 2, Window::of(9)) == WindowRect{0, 0, 4, 4});
  CHECK(window_rect(4, 7, 3, 3, Window::of(5)) == WindowRect{0, 1, 4, 5});
  CHECK(window_rect(5, 6, 4, 5, Window::full()) == WindowRect{0, 0, 5, 6});
}

TEST_CASE("even window puts the extra token on the high side") {
  CHECK(window_rect(20, 20, 10, 10, Window::of(4)) == WindowRect{9, 9, 4, 4});
  CHECK(window_rect(20, 20, 10, 10, Window::of(2)) == WindowRect{10, 10, 2, 2});
  CHECK(window_rect(20, 20, 10, 10, Window::of(1)) == WindowRect{10, 10, 1, 1});
}

TEST_CASE("window rect always lies inside the frame and contains the center when l is large enough") {
  for (std::size_t h = 1; h <= 9; ++h) {
    for (std::size_t w = 1; w <= 9; ++w) {
      for (std::size_t l = 1; l <= 11; ++l) {
        for (std::size_t r = 0; r < h; ++r) {
          for (std::size_t c = 0; c < w; ++c) {
            const WindowRect rect = window_rect(h, w, r, c, Window::of(l));
            CHECK(rect.rows == std::min(l, h));
            CHECK(rect.cols == std::min(l, w));
            CHECK(rect.row0 + rect.rows <= h);
            CHECK(rect.col0 + rect.cols <= w);
            CHECK(r >= rect.row0);
            CHECK(r < rect.row0 + rect.rows);
            CHECK(c >= rect.col0);
            CHECK(c < rect.col0 + rect.cols);
          }
        }
      }
    }
  }
}

TEST_CASE("window_crop converts local indices to absolute coordinates") {
  const FeatureVolume vol({2, 64, 64, 1}, std::vector<float>(2 * 64 * 64));
  const WindowView v = window_crop(vol, 1, 32, 32, Window::of(9));
  CHECK(v.rect == WindowRect{28, 28, 9, 9});
  CHECK(v.absolute(0, 0) == TokenCoord{1, 28, 28});
  CHECK(v.absolute(8, 8) == TokenCoord{1, 36, 36});
  CHECK(v.token(0, 0).size() == 1);
  CHECK_THROWS_AS(window_crop(vol, 2, 0, 0, Window::of(3)), ParameterError);
  CHECK_THROWS_AS(window_crop(vol, 0, 64, 0, Window::of(3)), ParameterError);
  CHECK_THROWS_AS(Window::of(0), ParameterError);
}

TEST_CASE("top_k_argmax examples") {
  const std::vector<float> a{0.1f, 0.9f, 0.5f, 0.3f};
  CHECK(top_k_argmax(a, 2, 2, 2) == std::vector<GridPos>{{0, 1}, {1, 0}});
  const std::vector<float> b{0.5f, 0.5f, 0.1f, 0.1f};
  CHECK(top_k_argmax(b, 2, 2, 1) == std::vector<GridPos>{{0, 0}});
  const std::vector<float> c{0.2f};
  CHECK(top_k_argmax(c, 1, 1, 3) == std::vector<GridPos>{{0, 0}});
  CHECK_THROWS_AS(top_k_argmax(a, 2, 2, 0), ParameterError);
  CHECK_THROWS_AS(top_k_argmax({}, 0, 0, 1), ParameterError);
}

TEST_CASE("top_k_argmax agrees with a full stable sort, including heavy ties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7, k = 1 + rng() % 10;
    std::vector<float> s(rows * cols);
    // Few distinct values so ties are common.
    for (float& x : s) x = static_cast<float>(static_cast<int>(rng() % 4)) * 0.25f;
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });
    const auto got = top_k_argmax(s, rows, cols, k);
    REQUIRE(got.size() == std::min(k, s.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].row == order[i] / cols);
      CHECK(got[i].col == order[i] % cols);
    }
  }
}
