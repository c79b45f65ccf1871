#include "speckle/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace speckle {
namespace {

struct Pt {
    double x, y;
};
using Stroke = std::vector<Pt>;

Stroke ellipse(double cx, double cy, double rx, double ry, int n = 14) {
    Stroke s;
    for (int i = 0; i <= n; ++i) {
        const double a = 2.0 * kPi * i / n;
        s.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    }
    return s;
}

Stroke arc(double cx, double cy, double r, double a0, double a1, int n = 10) {
    Stroke s;
    for (int i = 0; i <= n; ++i) {
        const double a = a0 + (a1 - a0) * i / n;
        s.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return s;
}

// Skeletons in the unit square, y downward. Coarse print-style shapes;
// per-sample jitter supplies the handwritten variation.
const std::map<char, std::vector<Stroke>>& glyph_table() {
    static const std::map<char, std::vector<Stroke>> table = [] {
        std::map<char, std::vector<Stroke>> g;
        g['0'] = {ellipse(0.5, 0.5, 0.26, 0.38)};
        g['1'] = {{{0.34, 0.26}, {0.54, 0.08}, {0.54, 0.92}}};
        g['2'] = {{{0.22, 0.3}, {0.3, 0.13}, {0.5, 0.08}, {0.7, 0.14}, {0.76, 0.3},
                   {0.6, 0.52}, {0.22, 0.9}, {0.8, 0.9}}};
        g['3'] = {{{0.26, 0.18}, {0.38, 0.08}, {0.58, 0.07}, {0.72, 0.17}, {0.7, 0.34},
                   {0.52, 0.46}, {0.68, 0.54}, {0.76, 0.68}, {0.68, 0.85}, {0.46, 0.93},
                   {0.26, 0.84}}};
        g['4'] = {{{0.6, 0.08}, {0.2, 0.6}, {0.84, 0.6}}, {{0.64, 0.3}, {0.64, 0.94}}};
        g['5'] = {{{0.74, 0.08}, {0.32, 0.08}, {0.28, 0.45}, {0.5, 0.4}, {0.7, 0.48},
                   {0.76, 0.65}, {0.66, 0.85}, {0.42, 0.93}, {0.25, 0.82}}};
        g['6'] = {{{0.66, 0.08}, {0.45, 0.26}, {0.32, 0.5}, {0.29, 0.72}, {0.4, 0.9},
                   {0.6, 0.9}, {0.71, 0.76}, {0.67, 0.58}, {0.5, 0.5}, {0.34, 0.58}}};
        g['7'] = {{{0.2, 0.1}, {0.8, 0.1}, {0.44, 0.92}}};
        g['8'] = {ellipse(0.5, 0.28, 0.2, 0.2), ellipse(0.5, 0.7, 0.24, 0.23)};
        g['9'] = {ellipse(0.5, 0.3, 0.21, 0.22), {{0.71, 0.34}, {0.67, 0.62}, {0.54, 0.92}}};

        g['a'] = {ellipse(0.46, 0.64, 0.2, 0.23), {{0.66, 0.42}, {0.66, 0.9}}};
        g['b'] = {{{0.3, 0.08}, {0.3, 0.9}}, ellipse(0.5, 0.66, 0.2, 0.22)};
        g['c'] = {arc(0.54, 0.64, 0.24, 0.8, 2.0 * kPi - 0.8)};
        g['d'] = {{{0.68, 0.08}, {0.68, 0.9}}, ellipse(0.48, 0.66, 0.2, 0.22)};
        g['e'] = {{{0.3, 0.62}, {0.72, 0.62}}, arc(0.51, 0.66, 0.22, 0.15, 2.0 * kPi - 1.0)};
        g['f'] = {{{0.68, 0.14}, {0.56, 0.08}, {0.46, 0.18}, {0.46, 0.9}},
                  {{0.3, 0.42}, {0.64, 0.42}}};
        g['g'] = {ellipse(0.5, 0.56, 0.19, 0.18), {{0.69, 0.4}, {0.69, 0.78}, {0.58, 0.93},
                   {0.38, 0.9}}};
        g['h'] = {{{0.3, 0.08}, {0.3, 0.9}},
                  {{0.3, 0.56}, {0.44, 0.42}, {0.62, 0.45}, {0.68, 0.62}, {0.68, 0.9}}};
        g['i'] = {{{0.5, 0.2}, {0.5, 0.25}}, {{0.5, 0.4}, {0.5, 0.9}}};
        g['j'] = {{{0.58, 0.2}, {0.58, 0.25}},
                  {{0.58, 0.4}, {0.58, 0.78}, {0.5, 0.93}, {0.34, 0.88}}};
        g['k'] = {{{0.3, 0.08}, {0.3, 0.9}}, {{0.68, 0.4}, {0.3, 0.64}}, {{0.44, 0.56}, {0.7, 0.9}}};
        g['l'] = {{{0.5, 0.08}, {0.5, 0.9}}};
        g['m'] = {{{0.24, 0.42}, {0.24, 0.9}},
                  {{0.24, 0.55}, {0.33, 0.42}, {0.45, 0.5}, {0.47, 0.9}},
                  {{0.47, 0.55}, {0.57, 0.42}, {0.7, 0.5}, {0.72, 0.9}}};
        g['n'] = {{{0.3, 0.42}, {0.3, 0.9}},
                  {{0.3, 0.56}, {0.43, 0.42}, {0.6, 0.46}, {0.66, 0.62}, {0.66, 0.9}}};
        g['o'] = {ellipse(0.5, 0.65, 0.22, 0.23)};
        g['p'] = {{{0.3, 0.4}, {0.3, 0.95}}, ellipse(0.52, 0.58, 0.19, 0.18)};
        g['q'] = {ellipse(0.48, 0.58, 0.19, 0.18), {{0.67, 0.4}, {0.67, 0.95}}};
        g['r'] = {{{0.34, 0.4}, {0.34, 0.9}},
                  {{0.34, 0.56}, {0.45, 0.42}, {0.6, 0.4}, {0.68, 0.48}}};
        g['s'] = {{{0.7, 0.44}, {0.55, 0.38}, {0.38, 0.42}, {0.34, 0.52}, {0.48, 0.6},
                   {0.62, 0.66}, {0.66, 0.78}, {0.52, 0.88}, {0.32, 0.84}}};
        g['t'] = {{{0.46, 0.14}, {0.46, 0.78}, {0.55, 0.9}, {0.68, 0.85}},
                  {{0.3, 0.4}, {0.66, 0.4}}};
        g['u'] = {{{0.3, 0.4}, {0.3, 0.74}, {0.4, 0.9}, {0.58, 0.88}, {0.66, 0.74}},
                  {{0.66, 0.4}, {0.66, 0.9}}};
        g['v'] = {{{0.3, 0.4}, {0.5, 0.9}, {0.7, 0.4}}};
        g['w'] = {{{0.22, 0.4}, {0.34, 0.9}, {0.5, 0.56}, {0.66, 0.9}, {0.78, 0.4}}};
        g['x'] = {{{0.3, 0.4}, {0.7, 0.9}}, {{0.7, 0.4}, {0.3, 0.9}}};
        g['y'] = {{{0.3, 0.4}, {0.5, 0.7}}, {{0.7, 0.4}, {0.38, 0.94}}};
        g['z'] = {{{0.3, 0.4}, {0.7, 0.4}, {0.3, 0.9}, {0.7, 0.9}}};
        return g;
    }();
    return table;
}

constexpr int kCanvas = 28;

double dist_to_segment(double px, double py, const Pt& a, const Pt& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len_sq = vx * vx + vy * vy;
    double t = len_sq > 0.0 ? ((px - a.x) * vx + (py - a.y) * vy) / len_sq : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = px - (a.x + t * vx), dy = py - (a.y + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::uint8_t> rasterize(const std::vector<Stroke>& strokes, SeededRng& rng) {
    // jitter: rotation, anisotropic scale, shear, translation, width, wobble
    const double rot = rng.uniform(-0.15, 0.15);
    const double sx = rng.uniform(0.85, 1.12), sy = rng.uniform(0.85, 1.12);
    const double shear = rng.uniform(-0.18, 0.18);
    const double tx = rng.uniform(-1.8, 1.8), ty = rng.uniform(-1.8, 1.8);
    const double halfwidth = rng.uniform(0.95, 1.35);
    GaussianStream wobble(rng);

    const double box = 21.0;  // usable span inside the 28px canvas
    const double cx = kCanvas / 2.0, cy = kCanvas / 2.0;
    const double cr = std::cos(rot), sr = std::sin(rot);

    std::vector<Stroke> placed;
    for (const Stroke& stroke : strokes) {
        Stroke out;
        for (const Pt& p : stroke) {
            double x = (p.x - 0.5) * sx * box, y = (p.y - 0.5) * sy * box;
            x += shear * y;
            const double xr = cr * x - sr * y, yr = sr * x + cr * y;
            out.push_back({xr + cx + tx + 0.35 * wobble.next(),
                           yr + cy + ty + 0.35 * wobble.next()});
        }
        placed.push_back(std::move(out));
    }

    const double soft = 0.9;
    std::vector<std::uint8_t> pixels(kCanvas * kCanvas, 0);
    for (int r = 0; r < kCanvas; ++r)
        for (int c = 0; c < kCanvas; ++c) {
            const double px = c + 0.5, py = r + 0.5;
            double best = 1e9;
            for (const Stroke& stroke : placed)
                for (std::size_t i = 0; i + 1 < stroke.size(); ++i)
                    best = std::min(best, dist_to_segment(px, py, stroke[i], stroke[i + 1]));
            const double v = std::clamp(1.0 - (best - halfwidth) / soft, 0.0, 1.0);
            pixels[static_cast<std::size_t>(r) * kCanvas + c] =
                static_cast<std::uint8_t>(std::lround(255.0 * v));
        }
    return pixels;
}

}  // namespace

std::vector<std::uint8_t> render_glyph(char glyph, std::uint64_t seed) {
    const auto it = glyph_table().find(glyph);
    if (it == glyph_table().end())
        throw DomainError(std::string("render_glyph: no skeleton for '") + glyph + "'");
    SeededRng rng(seed);
    return rasterize(it->second, rng);
}

SynthSet synth_glyphs(GlyphKind kind, std::uint32_t count, std::uint64_t seed) {
    const std::string classes =
        kind == GlyphKind::Digits ? "0123456789" : "abcdefghijklmnopqrstuvwxyz";

    // Deal classes from shuffled decks so every |classes| consecutive samples
    // cover all classes.
    SeededRng deck_rng(derive_seed(seed, 0xFFFFFFFF00000002ULL));
    std::vector<std::uint8_t> deal;
    while (deal.size() < count) {
        std::vector<std::uint8_t> deck(classes.size());
        std::iota(deck.begin(), deck.end(), std::uint8_t{0});
        shuffle(deck, deck_rng);
        deal.insert(deal.end(), deck.begin(), deck.end());
    }
    deal.resize(count);

    SynthSet set;
    set.images.count = count;
    set.images.rows = kCanvas;
    set.images.cols = kCanvas;
    set.images.pixels.reserve(static_cast<std::size_t>(count) * kCanvas * kCanvas);
    set.labels = deal;
    for (std::uint32_t i = 0; i < count; ++i) {
        SeededRng rng(derive_seed(seed, i));
        const auto pixels = rasterize(glyph_table().at(classes[deal[i]]), rng);
        set.images.pixels.insert(set.images.pixels.end(), pixels.begin(), pixels.end());
    }
    return set;
}

SynthSet synth_blobs(std::uint32_t count, std::uint64_t seed, Eigen::Index side) {
    SynthSet set;
    set.images.count = count;
    set.images.rows = static_cast<std::uint32_t>(side);
    set.images.cols = static_cast<std::uint32_t>(side);
    set.images.pixels.reserve(static_cast<std::size_t>(count) * side * side);
    for (std::uint32_t i = 0; i < count; ++i) {
        SeededRng rng(derive_seed(seed, i));
        const RealGrid blob = make_blob_object(side, rng);
        for (Eigen::Index j = 0; j < blob.size(); ++j)
            set.images.pixels.push_back(
                static_cast<std::uint8_t>(std::lround(255.0 * blob.data()[j])));
    }
    return set;  // unlabeled
}

RealGrid make_blob_object(Eigen::Index side, SeededRng& rng, int num_blobs) {
    RealGrid g = RealGrid::Zero(side, side);
    std::vector<Pt> centers;
    const double margin = static_cast<double>(side) * 0.2;
    for (int b = 0; b < num_blobs; ++b) {
        Pt p{};
        for (int attempt = 0; attempt < 200; ++attempt) {
            p = {rng.uniform(margin, side - margin), rng.uniform(margin, side - margin)};
            const double min_sep = static_cast<double>(side) * 0.22;
            const bool clear = std::all_of(centers.begin(), centers.end(), [&](const Pt& q) {
                return std::hypot(p.x - q.x, p.y - q.y) >= min_sep;
            });
            if (clear) break;
        }
        centers.push_back(p);
        const double radius = rng.uniform(1.2, 1.8);
        const double amp = rng.uniform(0.7, 1.0);
        for (Eigen::Index r = 0; r < side; ++r)
            for (Eigen::Index c = 0; c < side; ++c) {
                const double d2 = std::pow(c + 0.5 - p.x, 2) + std::pow(r + 0.5 - p.y, 2);
                const double v = amp * std::exp(-d2 / (2.0 * radius * radius));
                if (v > 0.05) g(r, c) = std::max(g(r, c), v);
            }
    }
    return g;
}

}  // namespace speckle
