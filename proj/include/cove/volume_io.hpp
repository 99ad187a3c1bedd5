#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cove/volume.hpp"

// COVF feature/latent volume files:
//   "COVF" | u32 version = 1 | u32 N | u32 H | u32 W | u32 d | N*H*W*d f32
// All integers and floats little-endian; payload in (frame, row, col, channel)
// order.
namespace cove {

inline constexpr std::uint32_t kCovfVersion = 1;

std::vector<std::uint8_t> encode_covf(const DenseVolume& volume);

// Loaded volumes are never marked normalized.
FeatureVolume decode_covf(std::span<const std::uint8_t> bytes);

FeatureVolume load_feature_volume(const std::filesystem::path& path);
LatentVolume load_latent_volume(const std::filesystem::path& path, int timestep = 0);
void save_volume(const std::filesystem::path& path, const DenseVolume& volume);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace cove
