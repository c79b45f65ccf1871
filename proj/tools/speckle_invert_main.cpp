// speckle-invert: simulate imaging through a scattering slab, train the
// inverting network, and compare against the memory-effect baseline.

#include <iostream>

#include <CLI11.hpp>

#include "speckle/commands.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kBadInput = 2,
    kDiverged = 3,
    kArtifactMismatch = 4,
};

int run(const std::string& command, const std::string& config_path,
        const std::optional<std::uint64_t>& seed, const std::string& out_dir) {
    using namespace speckle;
    RunConfig cfg = load_run_config(config_path);

    // --seed overrides the seed the command's randomness hangs off;
    // --out redirects the command's primary output directory.
    if (seed) {
        if (command == "gen-data") cfg.medium.seed = *seed;
        else if (command == "train") cfg.train.seed = *seed;
        else cfg.retrieval_seed = *seed;
    }
    if (!out_dir.empty()) {
        if (command == "gen-data") cfg.corpus_dir = out_dir;
        else cfg.report_dir = out_dir;
    }

    if (command == "gen-data") cmd_gen_data(cfg, std::cout);
    else if (command == "train") cmd_train(cfg, std::cout);
    else if (command == "eval") cmd_eval(cfg, std::cout);
    else cmd_baseline(cfg, std::cout);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"imaging through a scattering slab: simulation, DNN inversion, "
                 "memory-effect baseline"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;

    const std::pair<const char*, const char*> commands[] = {
        {"gen-data", "simulate a speckle corpus from IDX images"},
        {"train", "train the inverting network on a corpus"},
        {"eval", "reconstruct test speckles with a trained checkpoint"},
        {"baseline", "autocorrelation + HIO phase-retrieval comparison"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--seed", seed, "override the command's primary seed");
        sub->add_option("--out", out_dir, "override the command's output directory");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        return run(command, config_path, seed, out_dir);
    } catch (const speckle::DivergedTrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDiverged;
    } catch (const speckle::ArtifactMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArtifactMismatch;
    } catch (const speckle::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const speckle::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const speckle::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
