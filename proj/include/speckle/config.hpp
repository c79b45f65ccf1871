#pragma once

#include <filesystem>

#include "speckle/corpus.hpp"
#include "speckle/hio.hpp"
#include "speckle/train.hpp"

namespace speckle {

// Flat key=value run configuration ('#' comments, unknown keys rejected).
// Mirrors MediumSpec, preprocessing, split, NetworkSpec, TrainConfig and
// RetrievalConfig, plus the paths the commands work with.
struct RunConfig {
    MediumSpec medium;
    PreprocessConfig preprocessing{1, 32, 16};
    std::uint64_t train_count = 2000;
    std::uint64_t test_count = 25;

    NetworkSpec network;
    std::uint64_t network_init_seed = 99;

    TrainConfig train;

    // retrieval.* ; support is a centered box of support_side (0 = full grid)
    std::size_t retrieval_iterations = 500;
    double retrieval_beta = 0.9;
    std::size_t retrieval_er_tail = 50;
    std::size_t retrieval_restarts = 10;
    Eigen::Index retrieval_support_side = 32;
    std::uint64_t retrieval_seed = 99;

    std::filesystem::path images_idx;
    std::filesystem::path labels_idx;           // optional
    std::filesystem::path corpus_dir = "out/corpus";
    std::filesystem::path thin_corpus_dir;      // optional second corpus for baseline
    std::filesystem::path letters_corpus_dir;   // optional cross-class eval corpus
    std::filesystem::path checkpoint = "out/model.spkn";
    std::filesystem::path report_dir = "out/report";

    RetrievalConfig retrieval_config(Eigen::Index grid_side) const;
    CorpusManifest corpus_manifest() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace speckle
