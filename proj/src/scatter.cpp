#include "speckle/scatter.hpp"

#include <cmath>
#include <string>

#include "speckle/fft.hpp"

namespace speckle {
namespace {

void validate_spec(const MediumSpec& spec) {
    if (spec.object_side < 1)
        throw ConfigError("medium: object_side must be >= 1");
    if (!is_power_of_two(spec.speckle_side))
        throw ConfigError("medium: speckle_side must be a power of two, got " +
                          std::to_string(spec.speckle_side));
    if (spec.regime == Regime::Thin && spec.object_side > spec.speckle_side)
        throw ConfigError("medium: thin regime needs object_side <= speckle_side");
    if (spec.ls_um <= 0.0) throw ConfigError("medium: ls_um must be positive");
    if (spec.thickness_mm < 0.0) throw ConfigError("medium: thickness_mm must be >= 0");
    if (spec.noise.photon_scale < 0.0 || spec.noise.read_sigma < 0.0)
        throw ConfigError("medium: noise parameters must be >= 0");
}

void validate_object(const Medium& medium, const RealGrid& object) {
    const Eigen::Index side = medium.spec.object_side;
    if (object.rows() != side || object.cols() != side)
        throw DimensionError("forward: object is " + std::to_string(object.rows()) + "x" +
                             std::to_string(object.cols()) + ", medium expects " +
                             std::to_string(side) + "x" + std::to_string(side));
    if ((object.array() < 0.0).any())
        throw DomainError("forward: object values must be nonnegative amplitudes");
}

// Circular 2D convolution of same-shape real grids via the unitary FFT.
RealGrid circular_convolve(const RealGrid& a, const RealGrid& b) {
    const double scale = std::sqrt(static_cast<double>(a.rows()) * static_cast<double>(a.cols()));
    const ComplexGrid fa = fft2(a.cast<std::complex<double>>(), FftDirection::Forward);
    const ComplexGrid fb = fft2(b.cast<std::complex<double>>(), FftDirection::Forward);
    const ComplexGrid prod = fa.cwiseProduct(fb) * scale;
    RealGrid out = fft2(prod, FftDirection::Inverse).real();
    return out.cwiseMax(0.0);  // clean up fp dust; exact result is nonnegative
}

}  // namespace

Medium sample_medium(const MediumSpec& spec) {
    validate_spec(spec);
    Medium medium;
    medium.spec = spec;
    SeededRng rng(spec.seed);

    if (spec.regime == Regime::Thick) {
        const Eigen::Index n_in = spec.object_side * spec.object_side;
        const Eigen::Index n_out = spec.speckle_side * spec.speckle_side;
        const double sigma = std::sqrt(1.0 / (2.0 * static_cast<double>(n_in)));
        ComplexGrid t(n_out, n_in);
        for (Eigen::Index m = 0; m < n_out; ++m)
            for (Eigen::Index n = 0; n < n_in; ++n) {
                const auto [re, im] = gaussian_pair(rng);
                t(m, n) = {sigma * re, sigma * im};
            }
        medium.tm = TransmissionMatrix{std::move(t)};
    } else {
        const Eigen::Index side = spec.speckle_side;
        RealGrid h(side, side);
        const double sigma = std::sqrt(0.5);
        for (Eigen::Index r = 0; r < side; ++r)
            for (Eigen::Index c = 0; c < side; ++c) {
                const auto [re, im] = gaussian_pair(rng);
                h(r, c) = sigma * re * sigma * re + sigma * im * sigma * im;
            }
        h /= h.mean();
        medium.psf = SpecklePsf{std::move(h)};
    }
    return medium;
}

RealGrid forward_intensity(const Medium& medium, const RealGrid& object) {
    validate_object(medium, object);
    const Eigen::Index side = medium.spec.speckle_side;

    if (medium.spec.regime == Regime::Thick) {
        const ComplexVec field = medium.tm->t * flatten(object).cast<std::complex<double>>();
        RealGrid out(side, side);
        for (Eigen::Index i = 0; i < field.size(); ++i)
            out(i / side, i % side) = std::norm(field(i));
        return out;
    }
    return circular_convolve(embed_centered(object, side), medium.psf->h);
}

SpecklePattern normalize_mean_one(const SpecklePattern& pattern) {
    const double mean = pattern.grid.mean();
    if (mean == 0.0) return {pattern.grid, NormMode::Raw};  // bypass, flagged Raw
    return {pattern.grid / mean, NormMode::MeanOne};
}

SpecklePattern forward(const Medium& medium, const RealGrid& object, SeededRng& noise_rng) {
    SpecklePattern pattern{forward_intensity(medium, object), NormMode::Raw};
    pattern = noise_apply(pattern, medium.spec.noise, noise_rng);
    return normalize_mean_one(pattern);
}

SpecklePattern forward(const Medium& medium, const RealGrid& object) {
    if (medium.spec.noise.photon_scale > 0.0 || medium.spec.noise.read_sigma > 0.0)
        throw ConfigError("forward: medium configures noise, pass a noise rng");
    SeededRng unused(0);
    return forward(medium, object, unused);
}

std::uint64_t poisson_sample(double lambda, SeededRng& rng) {
    if (lambda < 0.0) throw DomainError("poisson_sample: negative mean");
    if (lambda == 0.0) return 0;

    if (lambda < 10.0) {
        // Knuth inversion by uniform products.
        const double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.next_double();
        } while (p > limit);
        return k - 1;
    }

    // PTRS transformed rejection (Hoermann 1993); exact for lambda >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_lambda - lambda - std::lgamma(kf + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

SpecklePattern noise_apply(const SpecklePattern& pattern, const NoiseSpec& noise, SeededRng& rng) {
    if (noise.photon_scale < 0.0 || noise.read_sigma < 0.0)
        throw DomainError("noise_apply: noise parameters must be >= 0");
    if (noise.photon_scale == 0.0 && noise.read_sigma == 0.0) return pattern;

    RealGrid out = pattern.grid;
    if (noise.photon_scale > 0.0) {
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                out(r, c) = static_cast<double>(
                                poisson_sample(noise.photon_scale * out(r, c), rng)) /
                            noise.photon_scale;
    }
    if (noise.read_sigma > 0.0) {
        GaussianStream gauss(rng);
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                out(r, c) += noise.read_sigma * gauss.next();
    }
    return {out.cwiseMax(0.0), NormMode::Raw};
}

double optical_depth(double thickness_mm, double ls_um) {
    if (ls_um <= 0.0) throw DomainError("optical_depth: ls must be positive");
    return thickness_mm * 1000.0 / ls_um;
}

double speckle_contrast(const SpecklePattern& pattern) {
    if (pattern.grid.size() < 2)
        throw DomainError("speckle_contrast: need at least 2 pixels");
    const double mean = pattern.grid.mean();
    if (mean == 0.0) throw DomainError("speckle_contrast: zero-mean pattern");
    const double var =
        (pattern.grid.array() - mean).square().sum() / static_cast<double>(pattern.grid.size());
    return std::sqrt(var) / mean;
}

double shift_correlation(const Medium& medium, const RealGrid& object,
                         Eigen::Index dx, Eigen::Index dy) {
    validate_object(medium, object);
    const Eigen::Index side = medium.spec.speckle_side;

    if (medium.spec.regime == Regime::Thin) {
        if (std::abs(dx) >= side || std::abs(dy) >= side)
            throw DomainError("shift_correlation: shift exceeds speckle grid");
        const RealGrid embedded = embed_centered(object, side);
        const RealGrid of_shifted = circular_convolve(circshift(embedded, dy, dx), medium.psf->h);
        const RealGrid compensated = circshift(circular_convolve(embedded, medium.psf->h), dy, dx);
        return pearson(of_shifted, compensated);
    }

    if (std::abs(dx) >= medium.spec.object_side || std::abs(dy) >= medium.spec.object_side)
        throw DomainError("shift_correlation: shift exceeds object grid");
    const RealGrid of_shifted = forward_intensity(medium, circshift(object, dy, dx));
    const RealGrid original = forward_intensity(medium, object);
    return pearson(of_shifted, original);
}

}  // namespace speckle
