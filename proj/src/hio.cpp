#include "speckle/hio.hpp"

#include <cmath>
#include <optional>

#include "speckle/fft.hpp"
#include "speckle/parallel.hpp"

namespace speckle {
namespace {

struct RunOutcome {
    RealGrid image;
    double residual = 0.0;
    std::vector<double> er_residuals;
    bool ok = false;
};

double magnitude_residual(const ComplexGrid& spectrum, const RealGrid& mags) {
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < mags.size(); ++i) {
        const double d = std::abs(spectrum.data()[i]) - mags.data()[i];
        num += d * d;
        den += mags.data()[i] * mags.data()[i];
    }
    return std::sqrt(num / den);
}

// Replace spectrum magnitudes, keeping phases; zero-magnitude bins get the
// target magnitude at phase 0.
ComplexGrid project_magnitudes(const ComplexGrid& spectrum, const RealGrid& mags) {
    ComplexGrid out(spectrum.rows(), spectrum.cols());
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const std::complex<double> v = spectrum.data()[i];
        const double a = std::abs(v);
        out.data()[i] = a > 0.0 ? v * (mags.data()[i] / a)
                                : std::complex<double>(mags.data()[i], 0.0);
    }
    return out;
}

RunOutcome run_single(const RealGrid& mags, const RealGrid& support,
                      const RetrievalConfig& cfg, std::uint64_t restart) {
    SeededRng rng(derive_seed(cfg.seed, restart));
    const Eigen::Index rows = mags.rows(), cols = mags.cols();

    RealGrid x(rows, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x.data()[i] = support.data()[i] > 0.0 ? rng.next_double() : 0.0;

    RunOutcome outcome;
    RealGrid xp(rows, cols);
    const auto cycle = [&](bool hio) {
        const ComplexGrid spectrum = fft2(x.cast<std::complex<double>>(), FftDirection::Forward);
        const double residual = magnitude_residual(spectrum, mags);
        xp = fft2(project_magnitudes(spectrum, mags), FftDirection::Inverse).real();
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const bool feasible = support.data()[i] > 0.0 && xp.data()[i] >= 0.0;
            if (hio)
                x.data()[i] = feasible ? xp.data()[i] : x.data()[i] - cfg.beta * xp.data()[i];
            else
                x.data()[i] = feasible ? xp.data()[i] : 0.0;
        }
        return residual;
    };

    for (std::size_t k = 0; k < cfg.iterations; ++k) cycle(true);

    // entry residual of ER cycle k+1 is the posterior residual of cycle k;
    // the first entry belongs to the HIO endpoint and is dropped
    std::vector<double> entry_residuals;
    for (std::size_t k = 0; k < cfg.er_tail; ++k) entry_residuals.push_back(cycle(false));

    if (!x.allFinite()) return outcome;  // failed restart
    const ComplexGrid final_spec = fft2(x.cast<std::complex<double>>(), FftDirection::Forward);
    outcome.residual = magnitude_residual(final_spec, mags);
    if (!entry_residuals.empty())
        outcome.er_residuals.assign(entry_residuals.begin() + 1, entry_residuals.end());
    outcome.er_residuals.push_back(outcome.residual);
    outcome.image = std::move(x);
    outcome.ok = true;
    return outcome;
}

}  // namespace

RealGrid centered_box_support(Eigen::Index grid_side, Eigen::Index box_side) {
    if (box_side < 1 || box_side > grid_side)
        throw ConfigError("centered_box_support: box must fit the grid");
    RealGrid mask = RealGrid::Zero(grid_side, grid_side);
    const Eigen::Index o = (grid_side - box_side) / 2;
    mask.block(o, o, box_side, box_side).setOnes();
    return mask;
}

HioResult hio_retrieve_detailed(const Autocorrelogram& ac, const RetrievalConfig& cfg) {
    if (cfg.iterations < 1) throw ConfigError("hio: iterations must be >= 1");
    if (cfg.beta <= 0.0 || cfg.beta > 1.0) throw ConfigError("hio: beta must be in (0,1]");
    if (cfg.restarts < 1) throw ConfigError("hio: restarts must be >= 1");

    const Eigen::Index rows = ac.grid.rows(), cols = ac.grid.cols();
    RealGrid support = cfg.support;
    if (support.size() == 0) support = RealGrid::Ones(rows, cols);
    if (support.rows() != rows || support.cols() != cols)
        throw DimensionError("hio: support mask does not match the grid");
    if ((support.array() > 0.0).count() == 0) throw ConfigError("hio: empty support");

    // Fourier magnitudes: sqrt of the clamped power spectrum of the
    // (un-centered) autocorrelation.
    const ComplexGrid power_spec =
        fft2(ifftshift(ac.grid).cast<std::complex<double>>(), FftDirection::Forward);
    RealGrid mags(rows, cols);
    for (Eigen::Index i = 0; i < mags.size(); ++i)
        mags.data()[i] = std::sqrt(std::max(0.0, power_spec.data()[i].real()));

    std::vector<RunOutcome> outcomes(cfg.restarts);
    parallel_for(cfg.restarts, [&](std::size_t r) {
        outcomes[r] = run_single(mags, support, cfg, r);
    });

    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        if (!outcomes[r].ok) continue;
        if (!best || outcomes[r].residual < outcomes[*best].residual) best = r;
    }
    if (!best) throw DomainError("hio: every restart diverged");

    return {std::move(outcomes[*best].image), outcomes[*best].residual,
            std::move(outcomes[*best].er_residuals)};
}

RealGrid hio_retrieve(const Autocorrelogram& ac, const RetrievalConfig& cfg) {
    return hio_retrieve_detailed(ac, cfg).image;
}

double align_score(const RealGrid& estimate, const RealGrid& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw DimensionError("align_score: shape mismatch");
    const Eigen::Index rows = truth.rows(), cols = truth.cols();

    const auto stats = [](const RealGrid& g) {
        const double mean = g.mean();
        const double var = (g.array() - mean).square().sum();
        return std::pair{mean, var};
    };
    const auto [mean_t, var_t] = stats(truth);
    const auto [mean_e, var_e] = stats(estimate);
    if (var_t == 0.0 || var_e == 0.0)
        throw DomainError("align_score: constant input has no correlation");

    const RealGrid reflected = estimate.reverse();

    double best = -1.0;
    for (const RealGrid* cand : {&estimate, &reflected}) {
        for (Eigen::Index dr = 0; dr < rows; ++dr)
            for (Eigen::Index dc = 0; dc < cols; ++dc) {
                double dot = 0.0;
                for (Eigen::Index r = 0; r < rows; ++r)
                    for (Eigen::Index c = 0; c < cols; ++c)
                        dot += (*cand)((r + dr) % rows, (c + dc) % cols) * truth(r, c);
                const double cov = dot - static_cast<double>(rows * cols) * mean_e * mean_t;
                best = std::max(best, cov / std::sqrt(var_e * var_t));
            }
    }
    return best;
}

}  // namespace speckle
