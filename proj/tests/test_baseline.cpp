#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "speckle/hio.hpp"
#include "speckle/preprocess.hpp"
#include "speckle/synth.hpp"

using namespace speckle;

namespace {

RealGrid embed_center(const RealGrid& obj, Eigen::Index side) {
    RealGrid out = RealGrid::Zero(side, side);
    const Eigen::Index o = (side - obj.rows()) / 2;
    out.block(o, o, obj.rows(), obj.cols()) = obj;
    return out;
}

// Direct shift-and-multiply circular correlation of the mean-subtracted
// pattern, peak-normalized -- the Wiener-Khinchin oracle.
RealGrid brute_force_autocorr(const RealGrid& g) {
    const Eigen::Index rows = g.rows(), cols = g.cols();
    const RealGrid d = g.array() - g.mean();
    RealGrid ac(rows, cols);
    for (Eigen::Index dr = 0; dr < rows; ++dr)
        for (Eigen::Index dc = 0; dc < cols; ++dc) {
            double acc = 0.0;
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c)
                    acc += d(r, c) * d((r + dr) % rows, (c + dc) % cols);
            ac(dr, dc) = acc;
        }
    ac = fftshift(ac);
    return ac / ac(rows / 2, cols / 2);
}

RealGrid random_pattern(Eigen::Index side, std::uint64_t seed) {
    SeededRng rng(seed);
    RealGrid g(side, side);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.next_double();
    return g;
}

}  // namespace

TEST_CASE("autocorr: impulse collapses to a central peak") {
    RealGrid g = RealGrid::Zero(16, 16);
    g(5, 9) = 3.0;
    const Autocorrelogram ac = autocorr({g, NormMode::Raw});
    CHECK(ac.grid(8, 8) == doctest::Approx(1.0));
    for (Eigen::Index r = 0; r < 16; ++r)
        for (Eigen::Index c = 0; c < 16; ++c)
            if (r != 8 || c != 8) CHECK(std::abs(ac.grid(r, c)) < 0.075);  // -1/(N-1) floor
}

TEST_CASE("autocorr: agrees with the direct correlation oracle") {
    const RealGrid g = random_pattern(16, 21);
    const Autocorrelogram fast = autocorr({g, NormMode::Raw});
    const RealGrid slow = brute_force_autocorr(g);
    CHECK((fast.grid - slow).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("autocorr: point symmetric about the center") {
    const RealGrid g = random_pattern(32, 22);
    const Autocorrelogram ac = autocorr({g, NormMode::Raw});
    double worst = 0.0;
    for (Eigen::Index r = 0; r < 32; ++r)
        for (Eigen::Index c = 0; c < 32; ++c) {
            const Eigen::Index mr = (64 - r) % 32, mc = (64 - c) % 32;  // reflection about (16,16)
            worst = std::max(worst, std::abs(ac.grid(r, c) - ac.grid(mr, mc)));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("autocorr: rejects constant and odd-sized patterns") {
    CHECK_THROWS_AS(autocorr({RealGrid::Constant(16, 16, 2.0), NormMode::Raw}),
                    DegenerateInputError);
    CHECK_THROWS_AS(autocorr({RealGrid::Zero(12, 12), NormMode::Raw}), DimensionError);
}

TEST_CASE("hio: autocorrelation of a point recovers a point") {
    RealGrid g = RealGrid::Zero(32, 32);
    g(14, 17) = 1.0;
    RetrievalConfig cfg;
    cfg.iterations = 100;
    cfg.er_tail = 20;
    cfg.restarts = 3;
    cfg.seed = 5;
    const RealGrid img = hio_retrieve(autocorr({g, NormMode::Raw}), cfg);
    // dominant single pixel
    Eigen::Index argmax = 0;
    for (Eigen::Index i = 1; i < img.size(); ++i)
        if (img.data()[i] > img.data()[argmax]) argmax = i;
    double rest = 0.0;
    for (Eigen::Index i = 0; i < img.size(); ++i)
        if (i != argmax) rest = std::max(rest, img.data()[i]);
    CHECK(img.data()[argmax] > 5.0 * rest);
}

TEST_CASE("hio: exact two-blob autocorrelation is inverted") {
    SeededRng rng(23);
    const RealGrid object = make_blob_object(16, rng, 2);
    const RealGrid embedded = embed_center(object, 32);
    RetrievalConfig cfg;
    cfg.support = centered_box_support(32, 16);
    cfg.seed = 7;
    const RealGrid img = hio_retrieve(autocorr({embedded, NormMode::Raw}), cfg);
    CHECK(align_score(img, embedded) >= 0.9);
}

TEST_CASE("hio: ER tail residual is non-increasing") {
    SeededRng rng(24);
    const RealGrid object = make_blob_object(16, rng, 3);
    MediumSpec spec;
    spec.regime = Regime::Thin;
    spec.object_side = 16;
    spec.speckle_side = 32;
    spec.seed = 81;
    const SpecklePattern pat = forward(sample_medium(spec), object);
    RetrievalConfig cfg;
    cfg.iterations = 60;
    cfg.er_tail = 30;
    cfg.restarts = 2;
    cfg.support = centered_box_support(32, 16);
    const HioResult res = hio_retrieve_detailed(autocorr(pat), cfg);
    REQUIRE(res.er_residuals.size() == 30);
    for (std::size_t i = 1; i < res.er_residuals.size(); ++i)
        CHECK(res.er_residuals[i] <= res.er_residuals[i - 1] * (1.0 + 1e-9));
}

TEST_CASE("hio: config validation") {
    const Autocorrelogram ac{RealGrid::Ones(8, 8)};
    RetrievalConfig cfg;
    cfg.beta = 1.5;
    CHECK_THROWS_AS(hio_retrieve(ac, cfg), ConfigError);
    cfg = {};
    cfg.iterations = 0;
    CHECK_THROWS_AS(hio_retrieve(ac, cfg), ConfigError);
    cfg = {};
    cfg.support = RealGrid::Zero(8, 8);
    CHECK_THROWS_AS(hio_retrieve(ac, cfg), ConfigError);
    cfg = {};
    cfg.support = RealGrid::Ones(4, 4);
    CHECK_THROWS_AS(hio_retrieve(ac, cfg), DimensionError);
}

TEST_CASE("align_score: identity and shift ambiguity absorbed") {
    const SynthSet digits = synth_glyphs(GlyphKind::Digits, 1, 31);
    const RealGrid truth =
        preprocess(digits.images.image(0), 28, 28, {1, 32, 16});
    CHECK(align_score(truth, truth) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(align_score(circshift(truth, 3, 2), truth) == doctest::Approx(1.0).epsilon(1e-12));
    const RealGrid reflected = truth.reverse();
    CHECK(align_score(reflected, truth) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("align_score: null distribution against a digit stays low") {
    const SynthSet digits = synth_glyphs(GlyphKind::Digits, 1, 32);
    const RealGrid truth = preprocess(digits.images.image(0), 28, 28, {1, 32, 16});
    int below = 0;
    double mean = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double s = align_score(random_pattern(16, 1000 + trial), truth);
        mean += s;
        if (s < 0.3) ++below;
    }
    mean /= 100.0;
    CHECK(mean < 0.3);
    CHECK(below >= 90);
}

TEST_CASE("align_score: degenerate inputs rejected") {
    const RealGrid flat = RealGrid::Constant(8, 8, 1.0);
    CHECK_THROWS_AS(align_score(flat, random_pattern(8, 50)), DomainError);
    CHECK_THROWS_AS(align_score(random_pattern(8, 51), flat), DomainError);
    CHECK_THROWS_AS(align_score(random_pattern(8, 52), random_pattern(4, 53)), DimensionError);
}
