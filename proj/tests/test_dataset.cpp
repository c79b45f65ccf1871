#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "speckle/corpus.hpp"
#include "speckle/crc32.hpp"
#include "speckle/io.hpp"
#include "speckle/synth.hpp"

using namespace speckle;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("test_tmp") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CorpusManifest desk_manifest(std::uint64_t seed = 42) {
    CorpusManifest m;
    m.medium.regime = Regime::Thick;
    m.medium.object_side = 16;
    m.medium.speckle_side = 32;
    m.medium.seed = seed;
    m.preprocessing = {1, 32, 16};
    m.train_count = 8;
    m.test_count = 4;
    return m;
}

}  // namespace

TEST_CASE("parse_idx: two-by-two single image from stated bytes") {
    const std::vector<std::uint8_t> bytes = {0x00, 0x00, 0x08, 0x03, 0x00, 0x00, 0x00, 0x01,
                                             0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
                                             0xAA, 0xBB, 0xCC, 0xDD};
    const IdxImageSet set = parse_idx(bytes);
    CHECK(set.count == 1);
    CHECK(set.rows == 2);
    CHECK(set.cols == 2);
    CHECK(set.pixels == std::vector<std::uint8_t>{0xAA, 0xBB, 0xCC, 0xDD});
}

TEST_CASE("parse_idx: label magic rejected by image parser") {
    std::vector<std::uint8_t> bytes = {0x00, 0x00, 0x08, 0x01, 0x00, 0x00, 0x00, 0x01, 0x07};
    CHECK_THROWS_AS(parse_idx(bytes), FormatError);
}

TEST_CASE("parse_idx: truncated payload rejected") {
    std::vector<std::uint8_t> bytes = {0x00, 0x00, 0x08, 0x03, 0x00, 0x00, 0x00, 0x01,
                                       0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02,
                                       0xAA, 0xBB, 0xCC};
    CHECK_THROWS_AS(parse_idx(bytes), FormatError);
    CHECK_THROWS_AS(parse_idx(std::vector<std::uint8_t>(7, 0)), FormatError);
}

TEST_CASE("parse_idx: official MNIST training-file header shape") {
    // Same header constants as the published train-images-idx3-ubyte.
    IdxImageSet big;
    big.count = 60000;
    big.rows = 28;
    big.cols = 28;
    big.pixels.assign(static_cast<std::size_t>(60000) * 28 * 28, 0);
    const IdxImageSet parsed = parse_idx(serialize_idx(big));
    CHECK(parsed.count == 60000);
    CHECK(parsed.rows == 28);
    CHECK(parsed.cols == 28);
}

TEST_CASE("parse_idx_labels: round trip and magic check") {
    const std::vector<std::uint8_t> labels = {3, 1, 4, 1, 5};
    CHECK(parse_idx_labels(serialize_idx_labels(labels)) == labels);

    IdxImageSet img;
    img.count = 0;
    img.rows = 0;
    img.cols = 0;
    CHECK_THROWS_AS(parse_idx_labels(serialize_idx(img)), FormatError);
}

TEST_CASE("preprocess: zeros stay zero") {
    const std::vector<std::uint8_t> img(28 * 28, 0);
    const RealGrid out = preprocess(img, 28, 28, {1, 32, 16});
    CHECK(out.rows() == 16);
    CHECK(out.maxCoeff() == 0.0);
}

TEST_CASE("preprocess: nearest-neighbor magnification") {
    const std::vector<std::uint8_t> img = {255, 0, 0, 0};
    const RealGrid out = preprocess(img, 2, 2, {2, 0, 0});
    REQUIRE(out.rows() == 4);
    CHECK(out.block(0, 0, 2, 2).minCoeff() == 1.0);
    CHECK(out.block(0, 2, 2, 2).maxCoeff() == 0.0);
    CHECK(out.block(2, 0, 2, 4).maxCoeff() == 0.0);
}

TEST_CASE("preprocess: block-mean downsample matches naive averaging") {
    SeededRng rng(5);
    std::vector<std::uint8_t> img(28 * 28);
    for (auto& b : img) b = static_cast<std::uint8_t>(rng.next_below(256));
    const RealGrid out = preprocess(img, 28, 28, {1, 0, 14});
    REQUIRE(out.rows() == 14);
    for (int r = 0; r < 14; ++r)
        for (int c = 0; c < 14; ++c) {
            double acc = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    acc += img[static_cast<std::size_t>(2 * r + i) * 28 + 2 * c + j] / 255.0;
            CHECK(out(r, c) == acc / 4.0);
        }
}

TEST_CASE("preprocess: impossible geometry rejected") {
    const std::vector<std::uint8_t> img(28 * 28, 0);
    CHECK_THROWS_AS(preprocess(img, 28, 28, {1, 20, 0}), ConfigError);   // pad < image
    CHECK_THROWS_AS(preprocess(img, 28, 28, {1, 0, 15}), ConfigError);   // 15 does not divide 28
    CHECK_THROWS_AS(preprocess(img, 28, 28, {0, 0, 0}), ConfigError);    // magnify < 1
    CHECK_THROWS_AS(preprocess(img, 27, 28, {1, 0, 0}), DimensionError); // byte count mismatch
}

TEST_CASE("preprocess: magnify then equal block reduction is the identity") {
    // paper-faithful semantics: x18 magnification onto the SLM then block
    // reduction back to the source grid
    SeededRng rng(6);
    std::vector<std::uint8_t> img(28 * 28);
    for (auto& b : img) b = static_cast<std::uint8_t>(rng.next_below(256));
    const RealGrid direct = preprocess(img, 28, 28, {1, 0, 0});
    const RealGrid through = preprocess(img, 28, 28, {18, 0, 28});
    CHECK((direct - through).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("corpus: generation is deterministic and round-trips bit-exactly") {
    const SynthSet synth = synth_glyphs(GlyphKind::Digits, 16, 7);
    const CorpusManifest manifest = desk_manifest();

    const fs::path dir_a = fresh_dir("corpus_a");
    const fs::path dir_b = fresh_dir("corpus_b");
    generate_corpus(manifest, synth.images, synth.labels, dir_a);
    generate_corpus(manifest, synth.images, synth.labels, dir_b);

    for (const char* name : {"train.spkc", "test.spkc", "manifest.txt"})
        CHECK(read_file(dir_a / name) == read_file(dir_b / name));

    const Corpus corpus = read_corpus(dir_a);
    CHECK(corpus.train.size() == 8);
    CHECK(corpus.test.size() == 4);
    for (const Sample& s : corpus.train) {
        CHECK(s.object.minCoeff() >= 0.0);
        CHECK(s.object.maxCoeff() <= 1.0);
        CHECK(s.speckle.grid.minCoeff() >= 0.0);
        CHECK(s.label >= 0);
        CHECK(s.label <= 9);
    }

    // parse(serialize(x)) == x at stored 32-bit precision
    const auto bytes = serialize_shard(corpus.train);
    const auto again = parse_shard(bytes, 16, 32);
    REQUIRE(again.size() == corpus.train.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].object == corpus.train[i].object);
        CHECK(again[i].speckle.grid == corpus.train[i].speckle.grid);
        CHECK(again[i].label == corpus.train[i].label);
    }
}

TEST_CASE("corpus: single-byte corruption is detected") {
    const SynthSet synth = synth_glyphs(GlyphKind::Digits, 12, 8);
    const fs::path dir = fresh_dir("corpus_corrupt");
    generate_corpus(desk_manifest(), synth.images, synth.labels, dir);

    auto bytes = read_file(dir / "test.spkc");
    bytes[bytes.size() / 2] ^= 0x10;
    write_file(dir / "test.spkc", bytes);
    CHECK_THROWS_AS(read_corpus(dir), FormatError);
}

TEST_CASE("corpus: empty train shard is valid") {
    const SynthSet synth = synth_glyphs(GlyphKind::Digits, 4, 9);
    CorpusManifest manifest = desk_manifest();
    manifest.train_count = 0;
    manifest.test_count = 3;
    const fs::path dir = fresh_dir("corpus_empty");
    generate_corpus(manifest, synth.images, synth.labels, dir);
    const Corpus corpus = read_corpus(dir);
    CHECK(corpus.train.empty());
    CHECK(corpus.test.size() == 3);
}

TEST_CASE("corpus: insufficient source images rejected") {
    const SynthSet synth = synth_glyphs(GlyphKind::Digits, 4, 10);
    CHECK_THROWS_AS(
        generate_corpus(desk_manifest(), synth.images, synth.labels, fresh_dir("corpus_small")),
        ConfigError);
}

TEST_CASE("manifest: text round trip preserves fields") {
    CorpusManifest m = desk_manifest(1234);
    m.medium.regime = Regime::Thin;
    m.medium.noise = {100.0, 0.05};
    m.digests["shard.train"] = "deadbeef";
    const CorpusManifest back = manifest_from_text(manifest_to_text(m));
    CHECK(back.medium.regime == Regime::Thin);
    CHECK(back.medium.seed == 1234);
    CHECK(back.medium.noise.photon_scale == 100.0);
    CHECK(back.medium.noise.read_sigma == 0.05);
    CHECK(back.preprocessing.pad_to == 32);
    CHECK(back.digests.at("shard.train") == "deadbeef");

    CHECK_THROWS_AS(manifest_from_text("nonsense.key=1\n"), FormatError);
}

TEST_CASE("synth: deterministic, balanced decks, plausible ink") {
    const SynthSet a = synth_glyphs(GlyphKind::Digits, 20, 11);
    const SynthSet b = synth_glyphs(GlyphKind::Digits, 20, 11);
    CHECK(a.images.pixels == b.images.pixels);
    CHECK(a.labels == b.labels);

    std::array<int, 10> first_deck{};
    for (int i = 0; i < 10; ++i) ++first_deck[a.labels[i]];
    for (int count : first_deck) CHECK(count == 1);

    for (std::uint32_t i = 0; i < a.images.count; ++i) {
        const auto img = a.images.image(i);
        const int ink = static_cast<int>(std::count_if(
            img.begin(), img.end(), [](std::uint8_t v) { return v > 128; }));
        CHECK(ink > 20);
        CHECK(ink < 400);
    }

    const SynthSet letters = synth_glyphs(GlyphKind::Letters, 26, 12);
    std::array<int, 26> deck{};
    for (int i = 0; i < 26; ++i) ++deck[letters.labels[i]];
    for (int count : deck) CHECK(count == 1);
}

TEST_CASE("synth: blob objects are bounded and sparse") {
    SeededRng rng(13);
    for (int i = 0; i < 10; ++i) {
        const RealGrid blob = make_blob_object(16, rng);
        CHECK(blob.minCoeff() >= 0.0);
        CHECK(blob.maxCoeff() <= 1.0);
        CHECK(blob.maxCoeff() > 0.5);
        const int occupied = static_cast<int>((blob.array() > 0.0).count());
        CHECK(occupied > 10);
        CHECK(occupied < 220);
    }
}
