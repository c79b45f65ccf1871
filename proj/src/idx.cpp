#include "speckle/idx.hpp"

#include "speckle/io.hpp"

namespace speckle {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

IdxImageSet parse_idx(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 16) throw FormatError("idx: header truncated");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != kImageMagic)
        throw FormatError("idx: bad image magic 0x" + std::to_string(magic) +
                          " (want 0x00000803)");
    IdxImageSet set;
    set.count = read_be32(bytes, 4);
    set.rows = read_be32(bytes, 8);
    set.cols = read_be32(bytes, 12);
    const std::size_t expected =
        static_cast<std::size_t>(set.count) * set.rows * set.cols;
    if (bytes.size() - 16 != expected)
        throw FormatError("idx: payload is " + std::to_string(bytes.size() - 16) +
                          " bytes, header promises " + std::to_string(expected));
    set.pixels.assign(bytes.begin() + 16, bytes.end());
    return set;
}

IdxImageSet parse_idx_file(const std::filesystem::path& path) {
    try {
        return parse_idx(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) throw FormatError("idx labels: header truncated");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != kLabelMagic)
        throw FormatError("idx labels: bad magic (want 0x00000801)");
    const std::uint32_t count = read_be32(bytes, 4);
    if (bytes.size() - 8 != count)
        throw FormatError("idx labels: payload length mismatch");
    return {bytes.begin() + 8, bytes.end()};
}

std::vector<std::uint8_t> parse_idx_labels_file(const std::filesystem::path& path) {
    try {
        return parse_idx_labels(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> serialize_idx(const IdxImageSet& set) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + set.pixels.size());
    append_be32(out, kImageMagic);
    append_be32(out, set.count);
    append_be32(out, set.rows);
    append_be32(out, set.cols);
    out.insert(out.end(), set.pixels.begin(), set.pixels.end());
    return out;
}

std::vector<std::uint8_t> serialize_idx_labels(const std::vector<std::uint8_t>& labels) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + labels.size());
    append_be32(out, kLabelMagic);
    append_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

void write_idx_file(const std::filesystem::path& path, const IdxImageSet& set) {
    write_file(path, serialize_idx(set));
}

void write_idx_labels_file(const std::filesystem::path& path,
                           const std::vector<std::uint8_t>& labels) {
    write_file(path, serialize_idx_labels(labels));
}

}  // namespace speckle
