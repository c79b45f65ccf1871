#include "speckle/config.hpp"

#include <sstream>

#include "speckle/io.hpp"

namespace speckle {
namespace {

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for " + key + ": '" + s + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for " + key + ": '" + s + "'");
    }
}

bool to_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("config: bad flag for " + key + ": '" + s + "'");
}

std::vector<Eigen::Index> to_sizes(const std::string& key, const std::string& s) {
    std::vector<Eigen::Index> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<Eigen::Index>(to_u64(key, item)));
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

}  // namespace

RetrievalConfig RunConfig::retrieval_config(Eigen::Index grid_side) const {
    RetrievalConfig cfg;
    cfg.iterations = retrieval_iterations;
    cfg.beta = retrieval_beta;
    cfg.er_tail = retrieval_er_tail;
    cfg.restarts = retrieval_restarts;
    cfg.seed = retrieval_seed;
    if (retrieval_support_side > 0)
        cfg.support = centered_box_support(grid_side, retrieval_support_side);
    return cfg;
}

CorpusManifest RunConfig::corpus_manifest() const {
    CorpusManifest m;
    m.medium = medium;
    m.preprocessing = preprocessing;
    m.train_count = train_count;
    m.test_count = test_count;
    return m;
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);

        if (key == "medium.regime") {
            if (value == "thick") cfg.medium.regime = Regime::Thick;
            else if (value == "thin") cfg.medium.regime = Regime::Thin;
            else throw ConfigError("config: unknown regime '" + value + "'");
        } else if (key == "medium.object_side") {
            cfg.medium.object_side = static_cast<Eigen::Index>(to_u64(key, value));
        } else if (key == "medium.speckle_side") {
            cfg.medium.speckle_side = static_cast<Eigen::Index>(to_u64(key, value));
        } else if (key == "medium.seed") {
            cfg.medium.seed = to_u64(key, value);
        } else if (key == "medium.thickness_mm") {
            cfg.medium.thickness_mm = to_double(key, value);
        } else if (key == "medium.ls_um") {
            cfg.medium.ls_um = to_double(key, value);
        } else if (key == "medium.noise.photon_scale") {
            cfg.medium.noise.photon_scale = to_double(key, value);
        } else if (key == "medium.noise.read_sigma") {
            cfg.medium.noise.read_sigma = to_double(key, value);
        } else if (key == "preprocessing.magnify") {
            cfg.preprocessing.magnify = static_cast<int>(to_u64(key, value));
        } else if (key == "preprocessing.pad_to") {
            cfg.preprocessing.pad_to = static_cast<int>(to_u64(key, value));
        } else if (key == "preprocessing.downsample_to") {
            cfg.preprocessing.downsample_to = static_cast<int>(to_u64(key, value));
        } else if (key == "split.train_count") {
            cfg.train_count = to_u64(key, value);
        } else if (key == "split.test_count") {
            cfg.test_count = to_u64(key, value);
        } else if (key == "network.input_side") {
            cfg.network.input_side = static_cast<Eigen::Index>(to_u64(key, value));
        } else if (key == "network.output_side") {
            cfg.network.output_side = static_cast<Eigen::Index>(to_u64(key, value));
        } else if (key == "network.hidden_sizes") {
            cfg.network.hidden_sizes = to_sizes(key, value);
        } else if (key == "network.output_activation") {
            if (value == "relu") cfg.network.output_activation = Activation::ReLU;
            else if (value == "identity") cfg.network.output_activation = Activation::Identity;
            else throw ConfigError("config: unknown activation '" + value + "'");
        } else if (key == "network.init_seed") {
            cfg.network_init_seed = to_u64(key, value);
        } else if (key == "train.lr") {
            cfg.train.lr = to_double(key, value);
        } else if (key == "train.epochs") {
            cfg.train.epochs = to_u64(key, value);
        } else if (key == "train.batch_size") {
            cfg.train.batch_size = to_u64(key, value);
        } else if (key == "train.seed") {
            cfg.train.seed = to_u64(key, value);
        } else if (key == "train.shuffle") {
            cfg.train.shuffle = to_bool(key, value);
        } else if (key == "train.momentum") {
            cfg.train.momentum = to_double(key, value);
        } else if (key == "train.checkpoint_every") {
            cfg.train.checkpoint_every = to_u64(key, value);
        } else if (key == "retrieval.iterations") {
            cfg.retrieval_iterations = to_u64(key, value);
        } else if (key == "retrieval.beta") {
            cfg.retrieval_beta = to_double(key, value);
        } else if (key == "retrieval.er_tail") {
            cfg.retrieval_er_tail = to_u64(key, value);
        } else if (key == "retrieval.restarts") {
            cfg.retrieval_restarts = to_u64(key, value);
        } else if (key == "retrieval.support_side") {
            cfg.retrieval_support_side = static_cast<Eigen::Index>(to_u64(key, value));
        } else if (key == "retrieval.seed") {
            cfg.retrieval_seed = to_u64(key, value);
        } else if (key == "paths.images_idx") {
            cfg.images_idx = value;
        } else if (key == "paths.labels_idx") {
            cfg.labels_idx = value;
        } else if (key == "paths.corpus_dir") {
            cfg.corpus_dir = value;
        } else if (key == "paths.thin_corpus_dir") {
            cfg.thin_corpus_dir = value;
        } else if (key == "paths.letters_corpus_dir") {
            cfg.letters_corpus_dir = value;
        } else if (key == "paths.checkpoint") {
            cfg.checkpoint = value;
        } else if (key == "paths.report_dir") {
            cfg.report_dir = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return parse_run_config(std::string(bytes.begin(), bytes.end()));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace speckle
