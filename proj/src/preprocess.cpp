#include "speckle/preprocess.hpp"

#include <string>

namespace speckle {

RealGrid preprocess(std::span<const std::uint8_t> image, int rows, int cols,
                    const PreprocessConfig& cfg) {
    if (rows < 1 || cols < 1 || image.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionError("preprocess: image bytes do not match dims");
    if (cfg.magnify < 1) throw ConfigError("preprocess: magnify must be >= 1");

    RealGrid g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            g(r, c) = static_cast<double>(image[static_cast<std::size_t>(r) * cols + c]) / 255.0;

    if (cfg.magnify > 1) {
        const int m = cfg.magnify;
        RealGrid big(rows * m, cols * m);
        for (int r = 0; r < rows * m; ++r)
            for (int c = 0; c < cols * m; ++c) big(r, c) = g(r / m, c / m);
        g = std::move(big);
    }

    if (cfg.pad_to > 0) {
        if (cfg.pad_to < g.rows() || cfg.pad_to < g.cols())
            throw ConfigError("preprocess: pad_to " + std::to_string(cfg.pad_to) +
                              " smaller than magnified image " + std::to_string(g.rows()) +
                              "x" + std::to_string(g.cols()));
        RealGrid padded = RealGrid::Zero(cfg.pad_to, cfg.pad_to);
        const Eigen::Index r0 = (cfg.pad_to - g.rows()) / 2;
        const Eigen::Index c0 = (cfg.pad_to - g.cols()) / 2;
        padded.block(r0, c0, g.rows(), g.cols()) = g;
        g = std::move(padded);
    }

    if (cfg.downsample_to > 0) {
        const Eigen::Index side = g.rows();
        if (g.cols() != side || side % cfg.downsample_to != 0)
            throw ConfigError("preprocess: downsample_to " + std::to_string(cfg.downsample_to) +
                              " must evenly divide the padded side " + std::to_string(side));
        const Eigen::Index block = side / cfg.downsample_to;
        RealGrid small(cfg.downsample_to, cfg.downsample_to);
        for (Eigen::Index r = 0; r < small.rows(); ++r)
            for (Eigen::Index c = 0; c < small.cols(); ++c)
                small(r, c) =
                    g.block(r * block, c * block, block, block).mean();
        g = std::move(small);
    }

    return g;
}

}  // namespace speckle
