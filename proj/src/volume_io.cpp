#include "cove/volume_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "cove/error.hpp"

namespace cove {

namespace {

constexpr char kMagic[4] = {'C', 'O', 'V', 'F'};
constexpr std::size_t kHeaderBytes = 4 + 5 * 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[at + b]) << (8 * b);
  return v;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > UINT32_MAX) throw ParameterError(std::string(what) + " does not fit the COVF header");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_covf(const DenseVolume& volume) {
  const VolumeShape& s = volume.shape();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + s.values() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, kCovfVersion);
  put_u32(out, checked_u32(s.frames, "N"));
  put_u32(out, checked_u32(s.height, "H"));
  put_u32(out, checked_u32(s.width, "W"));
  put_u32(out, checked_u32(s.channels, "d"));
  for (float f : volume.data()) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

FeatureVolume decode_covf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DataError("malformed COVF header: missing magic or truncated");
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kCovfVersion) {
    throw DataError("malformed COVF header: unsupported version " + std::to_string(version));
  }
  VolumeShape s{get_u32(bytes, 8), get_u32(bytes, 12), get_u32(bytes, 16), get_u32(bytes, 20)};
  if (s.frames == 0 || s.height == 0 || s.width == 0 || s.channels == 0) {
    throw DataError("malformed COVF header: zero extent");
  }
  const std::size_t payload = bytes.size() - kHeaderBytes;
  if (payload % 4 != 0 || payload / 4 != s.values()) {
    throw DataError("COVF payload length mismatch: header requires " + std::to_string(s.values()) +
                    " floats, file holds " + std::to_string(payload / 4) +
                    (payload % 4 != 0 ? " plus a partial value" : ""));
  }
  std::vector<float> data(s.values());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes, kHeaderBytes + 4 * i));
  }
  check_finite(data);
  return FeatureVolume(s, std::move(data), false);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

FeatureVolume load_feature_volume(const std::filesystem::path& path) { return decode_covf(read_file(path)); }

LatentVolume load_latent_volume(const std::filesystem::path& path, int timestep) {
  FeatureVolume v = load_feature_volume(path);
  return LatentVolume(v.shape(), std::vector<float>(v.data().begin(), v.data().end()), timestep);
}

void save_volume(const std::filesystem::path& path, const DenseVolume& volume) {
  write_file(path, encode_covf(volume));
}

}  // namespace cove
