#include "speckle/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "speckle/checkpoint.hpp"
#include "speckle/io.hpp"

namespace speckle {
namespace {

void validate_corpus(const Network& net, const std::vector<Sample>& samples,
                     const char* which) {
    for (const Sample& s : samples) {
        if (s.speckle.grid.rows() != net.spec.input_side ||
            s.object.rows() != net.spec.output_side)
            throw ArtifactMismatchError(std::string("train: ") + which +
                                        " sample dims do not match the network spec");
    }
}

std::string format_mse(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Eigen::MatrixXd stack_speckles(const std::vector<Sample>& samples) {
    if (samples.empty()) return {};
    const Eigen::Index n = samples.front().speckle.grid.size();
    Eigen::MatrixXd out(n, static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = flatten(samples[i].speckle.grid);
    return out;
}

Eigen::MatrixXd stack_objects(const std::vector<Sample>& samples) {
    if (samples.empty()) return {};
    const Eigen::Index n = samples.front().object.size();
    Eigen::MatrixXd out(n, static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = flatten(samples[i].object);
    return out;
}

TrainHistory train(Network& net, const std::vector<Sample>& train_set,
                   const std::vector<Sample>& heldout_set, const TrainConfig& cfg,
                   std::ostream* log) {
    if (train_set.empty()) throw ConfigError("train: empty corpus");
    if (cfg.epochs < 1) throw ConfigError("train: epochs must be >= 1");
    if (cfg.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
    if (cfg.lr < 0.0) throw ConfigError("train: negative learning rate");
    validate_corpus(net, train_set, "train");
    validate_corpus(net, heldout_set, "held-out");

    const Eigen::MatrixXd x_all = stack_speckles(train_set);
    const Eigen::MatrixXd y_all = stack_objects(train_set);
    const Eigen::MatrixXd x_held = stack_speckles(heldout_set);
    const Eigen::MatrixXd y_held = stack_objects(heldout_set);
    const Eigen::Index n = x_all.cols();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    Gradients grads;
    Gradients velocity;  // used only with momentum
    const bool use_momentum = cfg.momentum != 0.0;
    if (use_momentum) {
        velocity.w.resize(net.layers.size());
        velocity.b.resize(net.layers.size());
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            velocity.w[l] = Eigen::MatrixXd::Zero(net.layers[l].w.rows(), net.layers[l].w.cols());
            velocity.b[l] = Eigen::VectorXd::Zero(net.layers[l].b.size());
        }
    }

    TrainHistory history;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();

        if (cfg.shuffle) {
            SeededRng shuffle_rng(derive_seed(cfg.seed, epoch));
            shuffle(order, shuffle_rng);
        }

        double loss_sum = 0.0;
        for (Eigen::Index start = 0; start < n;
             start += static_cast<Eigen::Index>(cfg.batch_size)) {
            const Eigen::Index count =
                std::min<Eigen::Index>(static_cast<Eigen::Index>(cfg.batch_size), n - start);
            Eigen::MatrixXd xb(x_all.rows(), count);
            Eigen::MatrixXd yb(y_all.rows(), count);
            for (Eigen::Index j = 0; j < count; ++j) {
                xb.col(j) = x_all.col(order[static_cast<std::size_t>(start + j)]);
                yb.col(j) = y_all.col(order[static_cast<std::size_t>(start + j)]);
            }

            const double loss = backward(net, xb, yb, grads);
            if (!std::isfinite(loss))
                throw DivergedTrainingError(
                    epoch, "train: non-finite loss at epoch " + std::to_string(epoch));
            loss_sum += loss * static_cast<double>(count);

            if (use_momentum) {
                for (std::size_t l = 0; l < net.layers.size(); ++l) {
                    velocity.w[l] = cfg.momentum * velocity.w[l] + grads.w[l];
                    velocity.b[l] = cfg.momentum * velocity.b[l] + grads.b[l];
                }
                sgd_step(net, velocity, cfg.lr);
            } else {
                sgd_step(net, grads, cfg.lr);
            }
        }

        EpochStats stats;
        stats.train_mse = loss_sum / static_cast<double>(n);
        if (x_held.cols() > 0) stats.heldout_mse = mse_batch(forward_batch(net, x_held), y_held);
        stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        history.epochs.push_back(stats);

        if (log) {
            *log << "epoch " << epoch << "/" << cfg.epochs
                 << " train_mse=" << format_mse(stats.train_mse);
            if (x_held.cols() > 0) *log << " heldout_mse=" << format_mse(stats.heldout_mse);
            *log << " (" << format_mse(stats.seconds) << "s)\n";
        }

        if (!cfg.checkpoint_path.empty() && cfg.checkpoint_every > 0 &&
            epoch % cfg.checkpoint_every == 0 && epoch != cfg.epochs)
            save_checkpoint(cfg.checkpoint_path, net);
    }

    if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, net);
    return history;
}

std::string history_to_csv(const TrainHistory& history) {
    std::string out = "epoch,train_mse,heldout_mse,seconds\n";
    char buf[128];
    for (std::size_t i = 0; i < history.epochs.size(); ++i) {
        const EpochStats& e = history.epochs[i];
        if (std::isnan(e.heldout_mse))
            std::snprintf(buf, sizeof buf, "%zu,%.12g,,%.3f\n", i + 1, e.train_mse, e.seconds);
        else
            std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.3f\n", i + 1, e.train_mse,
                          e.heldout_mse, e.seconds);
        out += buf;
    }
    return out;
}

void write_history_csv(const std::filesystem::path& path, const TrainHistory& history) {
    const std::string text = history_to_csv(history);
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace speckle
