#pragma once

#include <cstdint>
#include <optional>

#include "speckle/grid.hpp"
#include "speckle/rng.hpp"

namespace speckle {

enum class Regime { Thick, Thin };
enum class NormMode { Raw, MeanOne, MaxOne };

struct NoiseSpec {
    double photon_scale = 0.0;  // photons per unit intensity; 0 disables shot noise
    double read_sigma = 0.0;    // additive Gaussian sigma; 0 disables read noise
};

struct MediumSpec {
    Regime regime = Regime::Thick;
    Eigen::Index object_side = 16;
    Eigen::Index speckle_side = 32;
    std::uint64_t seed = 1;
    double thickness_mm = 3.0;  // metadata; drives optical_depth reporting only
    double ls_um = 224.0;       // scattering mean free path, metadata likewise
    NoiseSpec noise;
};

struct SpecklePattern {
    RealGrid grid;
    NormMode norm = NormMode::Raw;
};

// Field-level operator of the thick regime: entries iid circular complex
// Gaussian with component variance 1/(2 object_side^2), so E|t_mn|^2 =
// 1/object_side^2. Shape (speckle_side^2, object_side^2).
struct TransmissionMatrix {
    ComplexGrid t;
};

// Intensity PSF of the thin regime: |g|^2 of an iid complex Gaussian field
// on the speckle grid, normalized to unit mean.
struct SpecklePsf {
    RealGrid h;
};

// One sampled realization of the synthetic medium. Regenerable bit-exactly
// from (spec.seed, shapes); holds whichever operator the regime calls for.
struct Medium {
    MediumSpec spec;
    std::optional<TransmissionMatrix> tm;
    std::optional<SpecklePsf> psf;
};

Medium sample_medium(const MediumSpec& spec);

// Pre-noise, pre-normalization intensity on the speckle grid.
// Thick: I_m = |sum_n t_mn o_n|^2 over the raster-flattened object.
// Thin: circular 2D convolution of the center-embedded object with the PSF.
RealGrid forward_intensity(const Medium& medium, const RealGrid& object);

// Full observation path: intensity, detector noise, then mean-one
// normalization. Normalization of an all-zero pattern is bypassed and the
// result is flagged NormMode::Raw.
SpecklePattern forward(const Medium& medium, const RealGrid& object, SeededRng& noise_rng);

// Noise-free overload; rejects media whose spec configures noise.
SpecklePattern forward(const Medium& medium, const RealGrid& object);

// Detector model: per-pixel Poisson(photon_scale * I) / photon_scale when
// photon_scale > 0, then additive Gaussian(0, read_sigma^2), clamped at 0.
SpecklePattern noise_apply(const SpecklePattern& pattern, const NoiseSpec& noise, SeededRng& rng);

SpecklePattern normalize_mean_one(const SpecklePattern& pattern);

// Exact Poisson sampler (inversion for small lambda, PTRS rejection above).
std::uint64_t poisson_sample(double lambda, SeededRng& rng);

// Slab thickness in units of the scattering mean free path.
double optical_depth(double thickness_mm, double ls_um);

// std(I)/mean(I) with population std; 1 for fully developed speckle.
double speckle_contrast(const SpecklePattern& pattern);

// Memory-effect probe. dx shifts columns, dy shifts rows, circularly.
// Thin regime: Pearson between the speckle of the shifted embedded object
// and the correspondingly shifted speckle of the object (identically 1 for a
// convolutional medium). Thick regime: Pearson between the speckle of the
// shifted object and the unshifted object's speckle.
double shift_correlation(const Medium& medium, const RealGrid& object,
                         Eigen::Index dx, Eigen::Index dy);

}  // namespace speckle
