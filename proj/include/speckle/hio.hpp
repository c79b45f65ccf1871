#pragma once

#include "speckle/autocorr.hpp"

namespace speckle {

// Hybrid input-output phase retrieval from an autocorrelogram (Fourier
// magnitudes are the square root of its clamped power spectrum), finishing
// with error-reduction iterations; best of `restarts` independent runs by
// Fourier-magnitude residual, ties broken by restart index.
struct RetrievalConfig {
    std::size_t iterations = 500;
    double beta = 0.9;
    std::size_t er_tail = 50;
    std::size_t restarts = 10;
    RealGrid support;  // binary mask on the pattern grid; empty = full grid
    std::uint64_t seed = 1;
};

RealGrid centered_box_support(Eigen::Index grid_side, Eigen::Index box_side);

struct HioResult {
    RealGrid image;
    double residual;                   // winner's relative magnitude residual
    std::vector<double> er_residuals;  // winner's residual per ER iteration
};

HioResult hio_retrieve_detailed(const Autocorrelogram& ac, const RetrievalConfig& cfg);
RealGrid hio_retrieve(const Autocorrelogram& ac, const RetrievalConfig& cfg);

// Max Pearson correlation over all circular translations of the estimate and
// of its point reflection; absorbs the inherent phase-retrieval ambiguities.
double align_score(const RealGrid& estimate, const RealGrid& truth);

}  // namespace speckle
