#pragma once

#include <cstdint>
#include <span>

#include "speckle/grid.hpp"

namespace speckle {

// Object preparation chain: scale bytes to [0,1], nearest-neighbor magnify,
// centered zero-pad, optional block-mean downsample. The desk-scale default
// (magnify 1, pad 32, downsample 16) trades the physical SLM geometry for a
// grid the synthetic medium can use directly; magnify followed by an equal
// block reduction is the identity, which is the paper-faithful mode.
struct PreprocessConfig {
    int magnify = 1;         // >= 1, nearest neighbor
    int pad_to = 0;          // 0 = no padding, else target side after magnify
    int downsample_to = 0;   // 0 = no reduction, else block-mean target side
};

RealGrid preprocess(std::span<const std::uint8_t> image, int rows, int cols,
                    const PreprocessConfig& cfg);

}  // namespace speckle
