#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speckle/grid.hpp"
#include "speckle/idx.hpp"
#include "speckle/rng.hpp"

namespace speckle {

enum class GlyphKind { Digits, Letters };

// Stroke-rasterized handwriting stand-in, emitted in the same IDX container
// as MNIST/EMNIST so the rest of the pipeline is source-agnostic. Classes are
// dealt round-robin from seeded shuffled decks (balanced coverage); each
// sample gets its own jitter (rotation, anisotropic scale, shear, shift,
// stroke width, vertex wobble) from a per-index derived stream.
struct SynthSet {
    IdxImageSet images;                // 28x28, like the MNIST source
    std::vector<std::uint8_t> labels;  // digit value or letter index 0-25
};

SynthSet synth_glyphs(GlyphKind kind, std::uint32_t count, std::uint64_t seed);

// Single rendered glyph, 28x28 bytes, for inspection and tests.
std::vector<std::uint8_t> render_glyph(char glyph, std::uint64_t seed);

// Sparse multi-blob object on the object grid; the baseline's phase
// retrieval is exercised on these (compact support, clean autocorrelation).
RealGrid make_blob_object(Eigen::Index side, SeededRng& rng, int num_blobs = 3);

// Blob objects rendered to bytes in the IDX container, unlabeled.
SynthSet synth_blobs(std::uint32_t count, std::uint64_t seed, Eigen::Index side = 16);

}  // namespace speckle
