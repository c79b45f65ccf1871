#pragma once

#include <filesystem>

#include "speckle/grid.hpp"

namespace speckle {

// 8-bit binary PGM (P5, maxval 255); values in [0,1] map by round(255*v).
void write_pgm(const std::filesystem::path& path, const RealGrid& image);

// Display helper for unbounded nonnegative data: scales by the maximum
// (max-one normalization) before writing.
void write_pgm_scaled(const std::filesystem::path& path, const RealGrid& image);

}  // namespace speckle
