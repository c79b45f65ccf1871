#pragma once

#include "speckle/grid.hpp"

namespace speckle {

enum class FftDirection { Forward, Inverse };

// Unitary 2D DFT on power-of-two grids (radix-2 per axis, 1/sqrt(N) scaling
// in both directions, so inverse(forward(x)) == x). Throws DimensionError
// for non-power-of-two shapes.
ComplexGrid fft2(const ComplexGrid& grid, FftDirection direction);

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace speckle
