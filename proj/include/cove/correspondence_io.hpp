#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cove/correspondence.hpp"

// COVC correspondence files:
//   "COVC" | u32 version = 1 | u32 N | u32 H | u32 W | u32 K | u32 l (0 = full)
//   then per anchor (row-major), per frame j != anchor frame ascending,
//   K pairs of u16 (row, col). Little-endian throughout.
namespace cove {

inline constexpr std::uint32_t kCovcVersion = 1;

std::vector<std::uint8_t> encode_covc(const CorrespondenceMap& map);
// The decoded map carries no scores.
CorrespondenceMap decode_covc(std::span<const std::uint8_t> bytes);

CorrespondenceMap load_correspondence_map(const std::filesystem::path& path);
void save_correspondence_map(const std::filesystem::path& path, const CorrespondenceMap& map);

}  // namespace cove
