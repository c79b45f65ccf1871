#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "speckle/fft.hpp"
#include "speckle/grid.hpp"
#include "speckle/rng.hpp"

using namespace speckle;

namespace {

ComplexGrid random_complex_grid(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
    ComplexGrid g(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto [re, im] = gaussian_pair(rng);
            g(r, c) = {re, im};
        }
    return g;
}

double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rng: identical seed gives identical streams") {
    SeededRng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    SeededRng c(999), d(999);
    for (int i = 0; i < 100; ++i) {
        const auto pc = gaussian_pair(c);
        const auto pd = gaussian_pair(d);
        CHECK(pc.first == pd.first);
        CHECK(pc.second == pd.second);
    }
}

TEST_CASE("rng: different seeds diverge") {
    SeededRng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("rng: box_muller at fixed uniforms matches hand evaluation") {
    // u1=0.5, u2=0.25: r = sqrt(-2 ln 0.5) = sqrt(2 ln 2), angle = pi/2.
    const auto [z0, z1] = box_muller(0.5, 0.25);
    CHECK(std::abs(z0) < 1e-15);  // r * cos(pi/2), cos(pi/2) ~ 6.1e-17
    CHECK(std::abs(z1 - 1.1774100225154747) < 1e-15);
}

TEST_CASE("rng: gaussian_pair moments over 1e6 pairs") {
    SeededRng rng(42);
    const int n = 1'000'000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = gaussian_pair(rng);
        sum += a + b;
        sumsq += a * a + b * b;
    }
    const double mean = sum / (2.0 * n);
    const double var = sumsq / (2.0 * n) - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("rng: derive_seed yields distinct child streams") {
    std::vector<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 100; ++i) seen.push_back(derive_seed(7, i));
    for (std::uint64_t i = 0; i < 100; ++i) seen.push_back(derive_seed(8, i));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("rng: next_below stays in range and covers values") {
    SeededRng rng(3);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 10000; ++i) ++counts[static_cast<int>(rng.next_below(10))];
    for (int c : counts) CHECK(c > 800);
}

TEST_CASE("fft2: impulse at origin gives constant 1/8 on 8x8") {
    ComplexGrid g = ComplexGrid::Zero(8, 8);
    g(0, 0) = 1.0;
    const ComplexGrid spectrum = fft2(g, FftDirection::Forward);
    for (Eigen::Index r = 0; r < 8; ++r)
        for (Eigen::Index c = 0; c < 8; ++c)
            CHECK(std::abs(spectrum(r, c) - std::complex<double>(0.125, 0.0)) < 1e-15);
}

TEST_CASE("fft2: inverse(forward(x)) == x on random 16x16") {
    SeededRng rng(11);
    const ComplexGrid x = random_complex_grid(16, 16, rng);
    const ComplexGrid back = fft2(fft2(x, FftDirection::Forward), FftDirection::Inverse);
    CHECK(max_abs_diff(x, back) < 1e-12);
}

TEST_CASE("fft2: Parseval by direct summation") {
    SeededRng rng(12);
    const ComplexGrid x = random_complex_grid(16, 16, rng);
    const ComplexGrid X = fft2(x, FftDirection::Forward);
    double in = 0.0, out = 0.0;
    for (Eigen::Index r = 0; r < 16; ++r)
        for (Eigen::Index c = 0; c < 16; ++c) {
            in += std::norm(x(r, c));
            out += std::norm(X(r, c));
        }
    CHECK(std::abs(in - out) / in < 1e-12);
}

TEST_CASE("fft2: linearity") {
    SeededRng rng(13);
    const ComplexGrid x = random_complex_grid(16, 16, rng);
    const ComplexGrid y = random_complex_grid(16, 16, rng);
    const std::complex<double> a(0.7, -1.3), b(-0.4, 0.2);
    const ComplexGrid lhs = fft2((a * x + b * y).eval(), FftDirection::Forward);
    const ComplexGrid rhs =
        a * fft2(x, FftDirection::Forward) + b * fft2(y, FftDirection::Forward);
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("fft2: circular shift multiplies spectrum by phase ramp") {
    SeededRng rng(14);
    const ComplexGrid x = random_complex_grid(16, 16, rng);
    const Eigen::Index dr = 3, dc = 5, n = 16;
    const ComplexGrid shifted_spec = fft2(circshift(x, dr, dc), FftDirection::Forward);
    const ComplexGrid spec = fft2(x, FftDirection::Forward);
    double max_err = 0.0;
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v) {
            const double phase = -2.0 * kPi *
                                 (static_cast<double>(u * dr) / n + static_cast<double>(v * dc) / n);
            const std::complex<double> ramp(std::cos(phase), std::sin(phase));
            max_err = std::max(max_err, std::abs(shifted_spec(u, v) - spec(u, v) * ramp));
        }
    CHECK(max_err < 1e-10);
}

TEST_CASE("fft2: non-power-of-two dimensions are rejected") {
    CHECK_THROWS_AS(fft2(ComplexGrid::Zero(6, 8), FftDirection::Forward), DimensionError);
    CHECK_THROWS_AS(fft2(ComplexGrid::Zero(8, 12), FftDirection::Inverse), DimensionError);
}

TEST_CASE("matvec: identity and scalar cases") {
    ComplexGrid id = ComplexGrid::Identity(3, 3);
    ComplexVec v(3);
    v << std::complex<double>(1, 2), std::complex<double>(-3, 0.5), std::complex<double>(0, -1);
    const ComplexVec out = matvec(id, v);
    CHECK((out - v).cwiseAbs().maxCoeff() == 0.0);

    ComplexGrid t(1, 1);
    t(0, 0) = {2.0, -1.0};
    ComplexVec a(1);
    a(0) = {0.5, 3.0};
    CHECK(std::abs(matvec(t, a)(0) - t(0, 0) * a(0)) == 0.0);
}

TEST_CASE("matvec: random 8x6 against naive double loop") {
    SeededRng rng(15);
    const ComplexGrid m = random_complex_grid(8, 6, rng);
    ComplexVec v(6);
    for (int i = 0; i < 6; ++i) {
        const auto [re, im] = gaussian_pair(rng);
        v(i) = {re, im};
    }
    const ComplexVec fast = matvec(m, v);
    for (Eigen::Index r = 0; r < 8; ++r) {
        std::complex<double> acc(0.0, 0.0);
        for (Eigen::Index c = 0; c < 6; ++c) acc += m(r, c) * v(c);
        CHECK(std::abs(fast(r) - acc) < 1e-12);
    }
}

TEST_CASE("matvec: distributes over vector addition") {
    SeededRng rng(16);
    const ComplexGrid m = random_complex_grid(7, 5, rng);
    ComplexVec v(5), w(5);
    for (int i = 0; i < 5; ++i) {
        const auto [a, b] = gaussian_pair(rng);
        const auto [c, d] = gaussian_pair(rng);
        v(i) = {a, b};
        w(i) = {c, d};
    }
    const ComplexVec lhs = matvec(m, (v + w).eval());
    const ComplexVec rhs = matvec(m, v) + matvec(m, w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matvec: length mismatch throws") {
    CHECK_THROWS_AS(matvec(ComplexGrid::Zero(3, 4), ComplexVec::Zero(3)), DimensionError);
}

TEST_CASE("grid: circshift and flatten follow raster order") {
    RealGrid g(2, 3);
    g << 1, 2, 3, 4, 5, 6;
    const RealVec f = flatten(g);
    CHECK(f(0) == 1);
    CHECK(f(2) == 3);
    CHECK(f(3) == 4);
    const RealGrid back = reshape(f, 2, 3);
    CHECK((back - g).cwiseAbs().maxCoeff() == 0.0);

    const RealGrid s = circshift(g, 0, 1);
    CHECK(s(0, 0) == 3);
    CHECK(s(0, 1) == 1);
    CHECK(s(1, 2) == 5);
}

TEST_CASE("grid: pearson basics") {
    RealGrid a(2, 2), b(2, 2);
    a << 0, 1, 2, 3;
    b << 1, 3, 5, 7;  // affine in a
    CHECK(pearson(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(pearson(a, RealGrid::Constant(2, 2, 4.0)), DomainError);
}
