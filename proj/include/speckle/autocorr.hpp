#pragma once

#include "speckle/scatter.hpp"

namespace speckle {

// Mean-subtracted circular autocorrelation via Wiener-Khinchin, circularly
// centered (zero shift at rows/2, cols/2) and peak-normalized to 1.
struct Autocorrelogram {
    RealGrid grid;
};

Autocorrelogram autocorr(const SpecklePattern& pattern);

}  // namespace speckle
