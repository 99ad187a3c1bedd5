#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "cove/error.hpp"
#include "cove/fixture.hpp"
#include "cove/kernels.hpp"
#include "cove/volume_io.hpp"
#include "test_support.hpp"

using namespace cove;

namespace {

std::vector<std::uint8_t> header(std::uint32_t n, std::uint32_t h, std::uint32_t w, std::uint32_t d) {
  std::vector<std::uint8_t> out{'C', 'O', 'V', 'F'};
  for (std::uint32_t v : {1u, n, h, w, d}) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  return out;
}

void append_floats(std::vector<std::uint8_t>& out, const std::vector<float>& values) {
  for (float f : values) {
    std::uint8_t raw[4];
    std::memcpy(raw, &f, 4);
    out.insert(out.end(), raw, raw + 4);
  }
}

float cosine(std::span<const float> a, std::span<const float> b) {
  return static_cast<float>(test::naive_dot(a.data(), b.data(), a.size()) /
                            std::sqrt(test::naive_dot(a.data(), a.data(), a.size()) *
                                      test::naive_dot(b.data(), b.data(), b.size())));
}

}  // namespace

TEST_CASE("COVF decode of a minimal well-formed file") {
  auto bytes = header(2, 2, 2, 3);
  std::vector<float> v(24);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(i) * 0.5f - 3.0f;
  append_floats(bytes, v);
  const FeatureVolume vol = decode_covf(bytes);
  CHECK(vol.shape() == VolumeShape{2, 2, 2, 3});
  CHECK_FALSE(vol.normalized());
  CHECK(std::equal(v.begin(), v.end(), vol.data().begin()));
}

TEST_CASE("COVF payload one float short is a length mismatch") {
  auto bytes = header(2, 2, 2, 3);
  append_floats(bytes, std::vector<float>(23, 1.0f));
  CHECK_THROWS_WITH_AS(decode_covf(bytes), doctest::Contains("length mismatch"), DataError);
}

TEST_CASE("COVF non-finite value reports its flat index") {
  auto bytes = header(2, 2, 2, 3);
  std::vector<float> v(24, 1.0f);
  v[7] = std::numeric_limits<float>::quiet_NaN();
  append_floats(bytes, v);
  CHECK_THROWS_WITH_AS(decode_covf(bytes), "non-finite value at flat index 7", DataError);
}

TEST_CASE("COVF malformed headers are rejected") {
  auto bytes = header(1, 1, 1, 1);
  append_floats(bytes, {1.0f});
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(decode_covf(bad_magic), DataError);
  auto bad_version = bytes;
  bad_version[4] = 2;
  CHECK_THROWS_AS(decode_covf(bad_version), DataError);
  auto zero_dim = header(1, 0, 1, 1);
  CHECK_THROWS_AS(decode_covf(zero_dim), DataError);
  CHECK_THROWS_AS(decode_covf(std::vector<std::uint8_t>(10, 0)), DataError);
  CHECK_THROWS_AS(load_feature_volume("/nonexistent/file.covf"), DataError);
}

TEST_CASE("COVF save/load round-trips bit-exactly") {
  const auto dir = test::temp_dir("feature_store");
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<float> v = test::gaussian(3 * 4 * 5 * 7, rng, 100.0f);
    v[0] = -0.0f;
    v[1] = std::numeric_limits<float>::denorm_min();
    v[2] = std::numeric_limits<float>::max();
    const FeatureVolume vol({3, 4, 5, 7}, v);
    const auto path = dir / ("v" + std::to_string(seed) + ".covf");
    save_volume(path, vol);
    const FeatureVolume back = load_feature_volume(path);
    CHECK(back.shape() == vol.shape());
    CHECK(std::memcmp(back.data().data(), vol.data().data(), v.size() * 4) == 0);
    CHECK(read_file(path) == encode_covf(back));
  }
}

TEST_CASE("volume construction validates extents and length") {
  CHECK_THROWS_AS(FeatureVolume({0, 1, 1, 1}, {}), ParameterError);
  CHECK_THROWS_AS(FeatureVolume({1, 1, 1, 2}, {1.0f}), DataError);
}

TEST_CASE("normalize: 3-4-5, zero and unit tokens") {
  const FeatureVolume vol({1, 1, 3, 3}, {3, 4, 0, 0, 0, 0, 1, 0, 0});
  // d = 3 here; first token (3,4,0)
  const NormalizeResult r = normalize(vol);
  CHECK(r.volume.normalized());
  CHECK(r.volume.token(0)[0] == doctest::Approx(0.6f).epsilon(1e-7));
  CHECK(r.volume.token(0)[1] == doctest::Approx(0.8f).epsilon(1e-7));
  CHECK(r.volume.token(0)[2] == 0.0f);
  for (float x : r.volume.token(1)) CHECK(x == 0.0f);
  REQUIRE(r.zero_tokens.size() == 1);
  CHECK(r.zero_tokens[0] == TokenCoord{0, 0, 1});
  CHECK(r.volume.token(2)[0] == 1.0f);
  CHECK(r.volume.token(2)[1] == 0.0f);
}

TEST_CASE("normalize with d = 2: (3,4) -> (0.6,0.8)") {
  const NormalizeResult r = normalize(FeatureVolume({1, 1, 1, 2}, {3, 4}));
  CHECK(r.volume.token(0)[0] == 0.6f);
  CHECK(r.volume.token(0)[1] == 0.8f);
  CHECK(r.zero_tokens.empty());
}

TEST_CASE("normalize yields unit norms and is idempotent") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeatureVolume once = test::random_normalized({3, 5, 4, 13}, seed);
    for (std::size_t t = 0; t < once.shape().tokens(); ++t) {
      const auto tok = once.token(t);
      CHECK(std::abs(std::sqrt(test::naive_dot(tok.data(), tok.data(), tok.size())) - 1.0) <= 1e-5);
    }
    const FeatureVolume twice = normalize(once).volume;
    for (std::size_t i = 0; i < once.data().size(); ++i) CHECK(std::abs(once.data()[i] - twice.data()[i]) <= 1e-7f);
  }
}

TEST_CASE("moving patch fixture: ground truth follows velocity") {
  MotionParams p;  // N=4, 8x8, d=16, 2x2 patch at (2,2), velocity (1,0)
  const MotionFixture fx = synthesize_moving_patch(p);
  CHECK(fx.volume.normalized());
  CHECK(fx.ground_truth.size() == 4);
  CHECK(fx.displacement == 1);
  const auto& track = fx.ground_truth.at({0, 2, 2});
  REQUIRE(track.size() == 4);
  CHECK(track[1] == TokenCoord{1, 3, 2});
  CHECK(track[2] == TokenCoord{2, 4, 2});
  CHECK(track[3] == TokenCoord{3, 5, 2});
}

TEST_CASE("moving patch fixture: static velocity keeps coordinates") {
  MotionParams p;
  p.velocity_row = 0;
  const MotionFixture fx = synthesize_moving_patch(p);
  for (const auto& [origin, track] : fx.ground_truth) {
    for (std::size_t f = 0; f < track.size(); ++f) {
      CHECK(track[f] == TokenCoord{static_cast<std::uint32_t>(f), origin.row, origin.col});
    }
  }
}

TEST_CASE("moving patch fixture: leaving the frame is a parameter error") {
  MotionParams p;
  p.velocity_row = 3;
  CHECK_THROWS_WITH_AS(synthesize_moving_patch(p), doctest::Contains("row 11 out of bounds"), ParameterError);
  p.velocity_row = -1;
  p.start_row = 1;
  CHECK_THROWS_AS(synthesize_moving_patch(p), ParameterError);
  MotionParams wide;
  wide.patch_height = 4;
  wide.patch_width = 4;  // 16 tokens, 16 channels
  CHECK_THROWS_AS(synthesize_moving_patch(wide), ParameterError);
}

TEST_CASE("moving patch fixture: successors match exactly, background is lower") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    MotionParams p{5, 16, 16, 24, 3, 3, 4, 5, 2, -1, seed};
    const MotionFixture fx = synthesize_moving_patch(p);
    const auto& vol = fx.volume;
    for (const auto& [origin, track] : fx.ground_truth) {
      for (std::size_t f = 0; f + 1 < track.size(); ++f) {
        const float same = cosine(vol.token(track[f]), vol.token(track[f + 1]));
        CHECK(std::abs(same - 1.0f) <= 1e-5f);
        for (std::size_t t = 0; t < vol.shape().frame_tokens(); ++t) {
          const TokenCoord c = coord_of(vol.shape(), (f + 1) * vol.shape().frame_tokens() + t);
          bool is_patch = false;
          for (const auto& [o2, tr2] : fx.ground_truth) is_patch |= tr2[f + 1] == c;
          if (!is_patch) CHECK(cosine(vol.token(track[f]), vol.token(c)) < same - 1e-3f);
        }
      }
    }
  }
}

TEST_CASE("fixtures are deterministic in the seed") {
  MotionParams p;
  p.seed = 42;
  const auto a = synthesize_moving_patch(p);
  const auto b = synthesize_moving_patch(p);
  CHECK(encode_covf(a.volume) == encode_covf(b.volume));
  p.seed = 43;
  CHECK(encode_covf(a.volume) != encode_covf(synthesize_moving_patch(p).volume));
}
