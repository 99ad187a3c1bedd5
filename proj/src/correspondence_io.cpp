#include "cove/correspondence_io.hpp"

#include <cstring>
#include <iterator>
#include <string>

#include "cove/error.hpp"
#include "cove/volume_io.hpp"

namespace cove {

namespace {

constexpr char kMagic[4] = {'C', 'O', 'V', 'C'};
constexpr std::size_t kHeaderBytes = 4 + 6 * 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[at + b]) << (8 * b);
  return v;
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint16_t>(in[at] | (in[at + 1] << 8));
}

}  // namespace

std::vector<std::uint8_t> encode_covc(const CorrespondenceMap& map) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + map.positions().size() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, kCovcVersion);
  put_u32(out, static_cast<std::uint32_t>(map.frames()));
  put_u32(out, static_cast<std::uint32_t>(map.height()));
  put_u32(out, static_cast<std::uint32_t>(map.width()));
  put_u32(out, static_cast<std::uint32_t>(map.k()));
  put_u32(out, static_cast<std::uint32_t>(map.window().length()));
  for (const GridPos& p : map.positions()) {
    put_u16(out, p.row);
    put_u16(out, p.col);
  }
  return out;
}

CorrespondenceMap decode_covc(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DataError("malformed COVC header: missing magic or truncated");
  }
  if (const std::uint32_t v = get_u32(bytes, 4); v != kCovcVersion) {
    throw DataError("malformed COVC header: unsupported version " + std::to_string(v));
  }
  const std::size_t n = get_u32(bytes, 8), h = get_u32(bytes, 12), w = get_u32(bytes, 16);
  const std::size_t k = get_u32(bytes, 20), l = get_u32(bytes, 24);
  if (n < 2 || h == 0 || w == 0 || k == 0) throw DataError("malformed COVC header: degenerate grid or K");
  if (h > 65536 || w > 65536) throw DataError("malformed COVC header: grid exceeds 16-bit coordinates");

  CorrespondenceMap map(n, h, w, k, l == 0 ? Window::full() : Window::of(l));
  map.drop_scores();
  auto pos = map.mutable_positions();
  if (bytes.size() - kHeaderBytes != pos.size() * 4) {
    throw DataError("COVC payload length mismatch: header requires " + std::to_string(pos.size()) +
                    " coordinate pairs, file holds " + std::to_string((bytes.size() - kHeaderBytes) / 4));
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pos[i] = {get_u16(bytes, kHeaderBytes + 4 * i), get_u16(bytes, kHeaderBytes + 4 * i + 2)};
    if (pos[i].row >= h || pos[i].col >= w) {
      throw DataError("COVC coordinate out of bounds at pair " + std::to_string(i));
    }
  }
  return map;
}

CorrespondenceMap load_correspondence_map(const std::filesystem::path& path) { return decode_covc(read_file(path)); }

void save_correspondence_map(const std::filesystem::path& path, const CorrespondenceMap& map) {
  write_file(path, encode_covc(map));
}

}  // namespace cove
