#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "speckle/errors.hpp"

namespace speckle {

// IDX image container (the MNIST/EMNIST format): big-endian magic 0x00000803,
// three big-endian u32 dims (count, rows, cols), then count*rows*cols bytes.
struct IdxImageSet {
    std::uint32_t count = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols, image-major

    std::span<const std::uint8_t> image(std::uint32_t i) const {
        const std::size_t n = static_cast<std::size_t>(rows) * cols;
        return {pixels.data() + i * n, n};
    }
};

IdxImageSet parse_idx(std::span<const std::uint8_t> bytes);
IdxImageSet parse_idx_file(const std::filesystem::path& path);

// Companion label container: magic 0x00000801, one u32 dim, then count bytes.
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels_file(const std::filesystem::path& path);

std::vector<std::uint8_t> serialize_idx(const IdxImageSet& set);
std::vector<std::uint8_t> serialize_idx_labels(const std::vector<std::uint8_t>& labels);

void write_idx_file(const std::filesystem::path& path, const IdxImageSet& set);
void write_idx_labels_file(const std::filesystem::path& path,
                           const std::vector<std::uint8_t>& labels);

}  // namespace speckle
