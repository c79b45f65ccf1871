// idx-synth: emit stroke-rasterized digit/letter sets (or blob objects) in
// the IDX container, as an offline stand-in for the MNIST/EMNIST source
// files the pipeline normally ingests.

#include <iostream>

#include <CLI11.hpp>

#include "speckle/idx.hpp"
#include "speckle/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"synthesize IDX image/label files (digits, letters, blobs)"};

    std::string kind = "digits";
    std::uint32_t count = 100;
    std::uint64_t seed = 1;
    std::string images_path;
    std::string labels_path;
    app.add_option("--kind", kind, "digits | letters | blobs")
        ->check(CLI::IsMember({"digits", "letters", "blobs"}));
    app.add_option("--count", count, "number of images")->required();
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--images", images_path, "output IDX image file")->required();
    app.add_option("--labels", labels_path, "output IDX label file (ignored for blobs)");

    CLI11_PARSE(app, argc, argv);

    try {
        speckle::SynthSet set;
        if (kind == "digits") set = speckle::synth_glyphs(speckle::GlyphKind::Digits, count, seed);
        else if (kind == "letters") set = speckle::synth_glyphs(speckle::GlyphKind::Letters, count, seed);
        else set = speckle::synth_blobs(count, seed);

        speckle::write_idx_file(images_path, set.images);
        std::cout << "wrote " << set.images.count << " " << set.images.rows << "x"
                  << set.images.cols << " images to " << images_path << "\n";
        if (!labels_path.empty() && !set.labels.empty()) {
            speckle::write_idx_labels_file(labels_path, set.labels);
            std::cout << "wrote labels to " << labels_path << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
