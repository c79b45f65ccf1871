#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "speckle/idx.hpp"
#include "speckle/preprocess.hpp"
#include "speckle/scatter.hpp"

namespace speckle {

// One training/testing record: object shown on the SLM paired with the
// speckle observed behind the medium.
struct Sample {
    RealGrid object;
    SpecklePattern speckle;
    std::int16_t label = -1;  // -1 when unlabeled; labels are reporting-only
};

struct CorpusManifest {
    MediumSpec medium;
    PreprocessConfig preprocessing;
    std::uint64_t train_count = 0;
    std::uint64_t test_count = 0;
    // Shard and source-file CRC32s, keyed digest.shard.train / digest.shard.test
    // / digest.source.<name>. Filled when a corpus is generated.
    std::map<std::string, std::string> digests;
};

struct Corpus {
    CorpusManifest manifest;
    std::vector<Sample> train;
    std::vector<Sample> test;
};

// Flat key=value manifest text ('#' comments, sorted keys, stable float
// formatting so regeneration is byte-identical).
std::string manifest_to_text(const CorpusManifest& manifest);
CorpusManifest manifest_from_text(const std::string& text);
CorpusManifest read_manifest(const std::filesystem::path& path);

// SPKC shard bytes: "SPKC", version u16 LE, record count u64 LE, then per
// record label i16 LE + object floats + speckle floats (32-bit LE, raster
// order). Grid sides come from the manifest.
std::vector<std::uint8_t> serialize_shard(const std::vector<Sample>& samples);
std::vector<Sample> parse_shard(std::span<const std::uint8_t> bytes,
                                Eigen::Index object_side, Eigen::Index speckle_side);

// Preprocess every selected image, push it through the medium, and persist
// train/test shards plus the manifest under out_dir. All randomness (the
// train/test split and per-sample noise streams) derives from
// manifest.medium.seed, so a manifest regenerates its corpus bit-exactly.
// `labels` may be empty; `source_digests` go into the manifest verbatim.
CorpusManifest generate_corpus(CorpusManifest manifest, const IdxImageSet& images,
                               const std::vector<std::uint8_t>& labels,
                               const std::filesystem::path& out_dir,
                               const std::map<std::string, std::string>& source_digests = {});

// Load manifest + shards, verifying shard digests.
Corpus read_corpus(const std::filesystem::path& dir);

}  // namespace speckle
