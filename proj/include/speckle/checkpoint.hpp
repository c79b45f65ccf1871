#pragma once

#include <filesystem>
#include <span>

#include "speckle/network.hpp"

namespace speckle {

// SPKN checkpoint: "SPKN" magic, then a payload of version u16, grid sides
// u32, hidden sizes u32, per-layer activation codes u8, and per layer the
// row-major weights then biases as 32-bit little-endian floats; a CRC32 of
// the payload trails the file.
std::vector<std::uint8_t> serialize_checkpoint(const Network& net);
Network parse_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const std::filesystem::path& path, const Network& net);
Network load_checkpoint(const std::filesystem::path& path);

}  // namespace speckle
