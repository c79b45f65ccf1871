#pragma once

#include <filesystem>
#include <limits>
#include <ostream>

#include "speckle/corpus.hpp"
#include "speckle/network.hpp"

namespace speckle {

struct TrainConfig {
    double lr = 0.01;
    std::size_t epochs = 200;
    std::size_t batch_size = 32;
    std::uint64_t seed = 1;
    bool shuffle = true;
    double momentum = 0.0;             // plain SGD when 0
    std::size_t checkpoint_every = 0;  // periodic checkpoint cadence; 0 = end only
    std::filesystem::path checkpoint_path;  // empty = never write checkpoints
};

struct EpochStats {
    double train_mse = 0.0;
    double heldout_mse = std::numeric_limits<double>::quiet_NaN();  // NaN = no held-out set
    double seconds = 0.0;  // wall clock, telemetry only
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
};

// Minibatch SGD over the corpus. Per-epoch shuffle order comes from a stream
// derived from (cfg.seed, epoch), so the trajectory is reproducible. Throws
// DivergedTrainingError naming the epoch on a non-finite loss.
TrainHistory train(Network& net, const std::vector<Sample>& train_set,
                   const std::vector<Sample>& heldout_set, const TrainConfig& cfg,
                   std::ostream* log = nullptr);

// CSV with header epoch,train_mse,heldout_mse,seconds. The seconds column is
// wall-clock telemetry; rerun comparisons canonicalize it away.
std::string history_to_csv(const TrainHistory& history);
void write_history_csv(const std::filesystem::path& path, const TrainHistory& history);

// Column-per-sample matrices for batched evaluation.
Eigen::MatrixXd stack_speckles(const std::vector<Sample>& samples);
Eigen::MatrixXd stack_objects(const std::vector<Sample>& samples);

}  // namespace speckle
