#include "speckle/fft.hpp"

#include <vector>

#include "speckle/rng.hpp"

namespace speckle {
namespace {

// Iterative in-place radix-2 Cooley-Tukey; length must be a power of two.
void fft1d(std::complex<double>* data, Eigen::Index n, FftDirection dir) {
    // bit-reversal permutation
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    const double sign = (dir == FftDirection::Forward) ? -1.0 : 1.0;
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wn(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wn;
            }
        }
    }
}

}  // namespace

ComplexGrid fft2(const ComplexGrid& grid, FftDirection direction) {
    const Eigen::Index rows = grid.rows(), cols = grid.cols();
    if (!is_power_of_two(rows) || !is_power_of_two(cols))
        throw DimensionError("fft2: dimensions must be powers of two, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));

    ComplexGrid out = grid;
    for (Eigen::Index r = 0; r < rows; ++r)
        fft1d(out.data() + r * cols, cols, direction);

    std::vector<std::complex<double>> col(static_cast<std::size_t>(rows));
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) col[static_cast<std::size_t>(r)] = out(r, c);
        fft1d(col.data(), rows, direction);
        for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = col[static_cast<std::size_t>(r)];
    }

    out *= 1.0 / std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
    return out;
}

}  // namespace speckle
