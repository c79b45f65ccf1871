#include "speckle/autocorr.hpp"

#include "speckle/fft.hpp"

namespace speckle {

Autocorrelogram autocorr(const SpecklePattern& pattern) {
    const RealGrid& grid = pattern.grid;
    if (!is_power_of_two(grid.rows()) || !is_power_of_two(grid.cols()))
        throw DimensionError("autocorr: pattern dimensions must be powers of two");

    const double mean = grid.mean();
    const RealGrid centered = grid.array() - mean;
    if (centered.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInputError("autocorr: constant pattern has no structure");

    const ComplexGrid spectrum = fft2(centered.cast<std::complex<double>>(), FftDirection::Forward);
    const ComplexGrid power = spectrum.cwiseAbs2().cast<std::complex<double>>();
    // inverse of |FFT|^2 is the circular autocorrelation (up to the unitary
    // scale, which the peak normalization absorbs)
    RealGrid ac = fft2(power, FftDirection::Inverse).real();

    ac = fftshift(ac);
    const double peak = ac(grid.rows() / 2, grid.cols() / 2);
    return {ac / peak};
}

}  // namespace speckle
