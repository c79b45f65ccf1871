#include "speckle/pgm.hpp"

#include <cmath>
#include <string>

#include "speckle/io.hpp"

namespace speckle {

void write_pgm(const std::filesystem::path& path, const RealGrid& image) {
    if ((image.array() < 0.0).any() || (image.array() > 1.0).any())
        throw DomainError("write_pgm: values must lie in [0,1]");
    std::string header = "P5\n" + std::to_string(image.cols()) + " " +
                         std::to_string(image.rows()) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + static_cast<std::size_t>(image.size()));
    for (Eigen::Index i = 0; i < image.size(); ++i)
        bytes.push_back(static_cast<std::uint8_t>(std::lround(255.0 * image.data()[i])));
    write_file(path, bytes);
}

void write_pgm_scaled(const std::filesystem::path& path, const RealGrid& image) {
    const double peak = image.maxCoeff();
    write_pgm(path, peak > 0.0 ? RealGrid(image / peak) : image);
}

}  // namespace speckle
