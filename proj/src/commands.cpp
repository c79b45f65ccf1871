#include "speckle/commands.hpp"

#include <cstdio>
#include <optional>

#include "speckle/checkpoint.hpp"
#include "speckle/crc32.hpp"
#include "speckle/io.hpp"
#include "speckle/pgm.hpp"

namespace speckle {
namespace {

void require_file(const std::filesystem::path& path, const char* what) {
    if (path.empty())
        throw ConfigError(std::string("config: no ") + what + " path configured");
    if (!std::filesystem::exists(path))
        throw ConfigError(std::string(what) + " not found: " + path.string());
}

std::string metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

char class_tag(std::int16_t label, bool letters) {
    if (label < 0) return '?';
    return letters ? static_cast<char>('a' + label) : static_cast<char>('0' + label);
}

void check_network_matches_corpus(const NetworkSpec& spec, const CorpusManifest& manifest,
                                  const char* context) {
    if (spec.input_side != manifest.medium.speckle_side ||
        spec.output_side != manifest.medium.object_side)
        throw ArtifactMismatchError(
            std::string(context) + ": network expects " + std::to_string(spec.input_side) +
            "->" + std::to_string(spec.output_side) + " grids, corpus provides " +
            std::to_string(manifest.medium.speckle_side) + "->" +
            std::to_string(manifest.medium.object_side));
}

// Eval one sample set; returns CSV text and emits PGM triplets.
std::string eval_section(const Network& net, const std::vector<Sample>& samples,
                         const std::filesystem::path& dir, bool letters, std::ostream& out,
                         const char* name) {
    std::filesystem::create_directories(dir);
    std::string csv = "id,class,mse,pearson\n";
    double mse_sum = 0.0, pearson_sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        const RealGrid pred = predict_image(net, s.speckle);
        const double sample_mse = mse(flatten(pred), flatten(s.object));
        const double corr = pearson(pred, s.object);
        mse_sum += sample_mse;
        pearson_sum += corr;

        char id[16];
        std::snprintf(id, sizeof id, "%03zu", i);
        csv += std::string(id) + "," + class_tag(s.label, letters) + "," + metric(sample_mse) +
               "," + metric(corr) + "\n";
        write_pgm_scaled(dir / (std::string(id) + "_speckle.pgm"), s.speckle.grid);
        write_pgm(dir / (std::string(id) + "_prediction.pgm"), pred);
        write_pgm(dir / (std::string(id) + "_truth.pgm"), s.object);
    }
    if (!samples.empty())
        out << name << ": " << samples.size()
            << " samples, mean mse " << metric(mse_sum / static_cast<double>(samples.size()))
            << ", mean pearson "
            << metric(pearson_sum / static_cast<double>(samples.size())) << "\n";
    return csv;
}

}  // namespace

void cmd_gen_data(const RunConfig& cfg, std::ostream& out) {
    require_file(cfg.images_idx, "IDX image source");

    const auto image_bytes = read_file(cfg.images_idx);
    const IdxImageSet images = parse_idx(image_bytes);
    std::map<std::string, std::string> source_digests{{"images", crc32_hex(image_bytes)}};

    std::vector<std::uint8_t> labels;
    if (!cfg.labels_idx.empty()) {
        require_file(cfg.labels_idx, "IDX label source");
        const auto label_bytes = read_file(cfg.labels_idx);
        labels = parse_idx_labels(label_bytes);
        source_digests["labels"] = crc32_hex(label_bytes);
    }

    const CorpusManifest manifest =
        generate_corpus(cfg.corpus_manifest(), images, labels, cfg.corpus_dir, source_digests);

    // probe: contrast of the speckle a point object casts through this medium
    const Medium medium = sample_medium(manifest.medium);
    RealGrid point = RealGrid::Zero(manifest.medium.object_side, manifest.medium.object_side);
    point(manifest.medium.object_side / 2, manifest.medium.object_side / 2) = 1.0;
    const SpecklePattern probe{forward_intensity(medium, point), NormMode::Raw};

    out << "corpus written to " << cfg.corpus_dir.string() << "\n"
        << "  train " << manifest.train_count << ", test " << manifest.test_count << " ("
        << (manifest.medium.regime == Regime::Thick ? "thick" : "thin") << " regime, objects "
        << manifest.medium.object_side << "x" << manifest.medium.object_side << ", speckle "
        << manifest.medium.speckle_side << "x" << manifest.medium.speckle_side << ")\n"
        << "  optical depth: "
        << metric(optical_depth(manifest.medium.thickness_mm, manifest.medium.ls_um))
        << " mean free paths\n"
        << "  probe speckle contrast: " << metric(speckle_contrast(probe)) << "\n";
}

void cmd_train(const RunConfig& cfg, std::ostream& out) {
    require_file(cfg.corpus_dir / "manifest.txt", "corpus manifest");
    const Corpus corpus = read_corpus(cfg.corpus_dir);
    check_network_matches_corpus(cfg.network, corpus.manifest, "train");

    SeededRng rng(cfg.network_init_seed);
    Network net = init_network(cfg.network, rng);

    TrainConfig train_cfg = cfg.train;
    train_cfg.checkpoint_path = cfg.checkpoint;
    if (!cfg.checkpoint.parent_path().empty())
        std::filesystem::create_directories(cfg.checkpoint.parent_path());
    std::filesystem::create_directories(cfg.report_dir);

    const TrainHistory history = train(net, corpus.train, corpus.test, train_cfg, &out);
    write_history_csv(cfg.report_dir / "history.csv", history);

    out << "checkpoint: " << cfg.checkpoint.string() << "\n"
        << "history: " << (cfg.report_dir / "history.csv").string() << "\n"
        << "final train mse " << metric(history.epochs.back().train_mse);
    if (!corpus.test.empty())
        out << ", final held-out mse " << metric(history.epochs.back().heldout_mse);
    out << "\n";
}

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
    require_file(cfg.checkpoint, "checkpoint");
    require_file(cfg.corpus_dir / "manifest.txt", "corpus manifest");

    const Network net = load_checkpoint(cfg.checkpoint);
    const Corpus corpus = read_corpus(cfg.corpus_dir);
    check_network_matches_corpus(net.spec, corpus.manifest, "eval");

    const std::filesystem::path eval_dir = cfg.report_dir / "eval";
    std::filesystem::create_directories(eval_dir);
    write_text(eval_dir / "digits_metrics.csv",
               eval_section(net, corpus.test, eval_dir / "digits", false, out, "digits"));

    if (!cfg.letters_corpus_dir.empty()) {
        require_file(cfg.letters_corpus_dir / "manifest.txt", "letters corpus manifest");
        const Corpus letters = read_corpus(cfg.letters_corpus_dir);
        check_network_matches_corpus(net.spec, letters.manifest, "eval (letters)");
        write_text(eval_dir / "letters_metrics.csv",
                   eval_section(net, letters.test, eval_dir / "letters", true, out, "letters"));
    }
}

void cmd_baseline(const RunConfig& cfg, std::ostream& out) {
    require_file(cfg.corpus_dir / "manifest.txt", "corpus manifest");

    // the comparison column is filled when a digit-trained checkpoint exists
    std::optional<Network> net;
    if (!cfg.checkpoint.empty() && std::filesystem::exists(cfg.checkpoint))
        net = load_checkpoint(cfg.checkpoint);

    const std::filesystem::path base_dir = cfg.report_dir / "baseline";
    std::filesystem::create_directories(base_dir);
    std::string details = "object_id,regime,align_score,residual\n";
    std::string comparison = "object_id,regime,dnn_score,baseline_score\n";

    std::vector<std::filesystem::path> corpora{cfg.corpus_dir};
    if (!cfg.thin_corpus_dir.empty()) corpora.push_back(cfg.thin_corpus_dir);

    for (const auto& dir : corpora) {
        require_file(dir / "manifest.txt", "corpus manifest");
        const Corpus corpus = read_corpus(dir);
        const char* regime = corpus.manifest.medium.regime == Regime::Thick ? "thick" : "thin";
        const Eigen::Index side = corpus.manifest.medium.speckle_side;
        const RetrievalConfig retrieval = cfg.retrieval_config(side);

        double score_sum = 0.0;
        for (std::size_t i = 0; i < corpus.test.size(); ++i) {
            const Sample& s = corpus.test[i];
            const HioResult res = hio_retrieve_detailed(autocorr(s.speckle), retrieval);
            const RealGrid truth = embed_centered(s.object, side);
            const double score = align_score(res.image, truth);
            score_sum += score;

            char id[32];
            std::snprintf(id, sizeof id, "%s_%03zu", regime, i);
            details += std::string(id) + "," + regime + "," + metric(score) + "," +
                       metric(res.residual) + "\n";
            write_pgm_scaled(base_dir / (std::string(id) + "_retrieved.pgm"), res.image);
            write_pgm(base_dir / (std::string(id) + "_truth.pgm"), truth);

            if (net && net->spec.input_side == side &&
                net->spec.output_side == corpus.manifest.medium.object_side) {
                const double dnn =
                    align_score(predict_image(*net, s.speckle), s.object);
                comparison += std::string(id) + "," + regime + "," + metric(dnn) + "," +
                              metric(score) + "\n";
            }
        }
        if (!corpus.test.empty())
            out << regime << " corpus " << dir.string() << ": mean baseline align_score "
                << metric(score_sum / static_cast<double>(corpus.test.size())) << " over "
                << corpus.test.size() << " objects\n";
    }

    write_text(base_dir / "baseline_details.csv", details);
    write_text(base_dir / "comparison.csv", comparison);
    out << "reports under " << base_dir.string() << "\n";
}

}  // namespace speckle
