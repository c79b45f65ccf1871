#include "speckle/checkpoint.hpp"

#include <algorithm>

#include "speckle/crc32.hpp"
#include "speckle/io.hpp"

namespace speckle {
namespace {

constexpr char kMagic[4] = {'S', 'P', 'K', 'N'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const Network& net) {
    std::vector<std::uint8_t> payload;
    append_u16le(payload, kVersion);
    append_u32le(payload, static_cast<std::uint32_t>(net.spec.input_side));
    append_u32le(payload, static_cast<std::uint32_t>(net.spec.output_side));
    append_u16le(payload, static_cast<std::uint16_t>(net.spec.hidden_sizes.size()));
    for (const Eigen::Index h : net.spec.hidden_sizes)
        append_u32le(payload, static_cast<std::uint32_t>(h));
    append_u16le(payload, static_cast<std::uint16_t>(net.layers.size()));
    for (const DenseLayer& layer : net.layers)
        payload.push_back(static_cast<std::uint8_t>(layer.activation));
    for (const DenseLayer& layer : net.layers) {
        for (Eigen::Index r = 0; r < layer.w.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.w.cols(); ++c)
                append_f32le(payload, static_cast<float>(layer.w(r, c)));
        for (Eigen::Index i = 0; i < layer.b.size(); ++i)
            append_f32le(payload, static_cast<float>(layer.b(i)));
    }

    std::vector<std::uint8_t> out;
    out.reserve(4 + payload.size() + 4);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    append_u32le(out, crc32(payload));
    return out;
}

Network parse_checkpoint(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8 || !std::equal(kMagic, kMagic + 4, bytes.begin()))
        throw FormatError("checkpoint: bad magic (want SPKN)");

    const auto payload = bytes.subspan(4, bytes.size() - 8);
    ByteReader trailer(bytes.subspan(bytes.size() - 4));
    if (crc32(payload) != trailer.u32le())
        throw FormatError("checkpoint: CRC mismatch, file corrupted");

    ByteReader reader(payload);
    if (reader.u16le() != kVersion) throw FormatError("checkpoint: unsupported version");

    Network net;
    net.spec.input_side = static_cast<Eigen::Index>(reader.u32le());
    net.spec.output_side = static_cast<Eigen::Index>(reader.u32le());
    const std::uint16_t hidden_count = reader.u16le();
    net.spec.hidden_sizes.resize(hidden_count);
    for (auto& h : net.spec.hidden_sizes) h = static_cast<Eigen::Index>(reader.u32le());
    const std::uint16_t layer_count = reader.u16le();
    if (layer_count != hidden_count + 1)
        throw FormatError("checkpoint: layer count inconsistent with hidden sizes");

    std::vector<Activation> acts(layer_count);
    for (auto& a : acts) {
        const std::uint8_t code = reader.u8();
        if (code > 1) throw FormatError("checkpoint: unknown activation code");
        a = static_cast<Activation>(code);
    }
    net.spec.output_activation = acts.back();

    std::vector<Eigen::Index> sizes;
    sizes.push_back(net.spec.input_size());
    sizes.insert(sizes.end(), net.spec.hidden_sizes.begin(), net.spec.hidden_sizes.end());
    sizes.push_back(net.spec.output_size());

    for (std::uint16_t l = 0; l < layer_count; ++l) {
        DenseLayer layer;
        layer.activation = acts[l];
        layer.w.resize(sizes[l + 1], sizes[l]);
        for (Eigen::Index r = 0; r < layer.w.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.w.cols(); ++c)
                layer.w(r, c) = static_cast<double>(reader.f32le());
        layer.b.resize(sizes[l + 1]);
        for (Eigen::Index i = 0; i < layer.b.size(); ++i)
            layer.b(i) = static_cast<double>(reader.f32le());
        net.layers.push_back(std::move(layer));
    }
    if (reader.remaining() != 0) throw FormatError("checkpoint: trailing bytes");
    return net;
}

void save_checkpoint(const std::filesystem::path& path, const Network& net) {
    write_file(path, serialize_checkpoint(net));
}

Network load_checkpoint(const std::filesystem::path& path) {
    try {
        return parse_checkpoint(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace speckle
