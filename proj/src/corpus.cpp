#include "speckle/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "speckle/crc32.hpp"
#include "speckle/io.hpp"

namespace speckle {
namespace {

constexpr std::uint16_t kShardVersion = 1;
constexpr char kShardMagic[4] = {'S', 'P', 'K', 'C'};

// High stream tag so the split shuffle never collides with per-sample
// noise streams (which use the sample position as the index).
constexpr std::uint64_t kSplitStream = 0xFFFFFFFF00000001ULL;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw FormatError("manifest: bad number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw FormatError("manifest: bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string manifest_to_text(const CorpusManifest& m) {
    std::map<std::string, std::string> kv;
    kv["format.version"] = "1";
    kv["medium.regime"] = m.medium.regime == Regime::Thick ? "thick" : "thin";
    kv["medium.object_side"] = std::to_string(m.medium.object_side);
    kv["medium.speckle_side"] = std::to_string(m.medium.speckle_side);
    kv["medium.seed"] = std::to_string(m.medium.seed);
    kv["medium.thickness_mm"] = format_double(m.medium.thickness_mm);
    kv["medium.ls_um"] = format_double(m.medium.ls_um);
    kv["medium.noise.photon_scale"] = format_double(m.medium.noise.photon_scale);
    kv["medium.noise.read_sigma"] = format_double(m.medium.noise.read_sigma);
    kv["medium.normalization"] = "mean-one";
    kv["preprocessing.magnify"] = std::to_string(m.preprocessing.magnify);
    kv["preprocessing.pad_to"] = std::to_string(m.preprocessing.pad_to);
    kv["preprocessing.downsample_to"] = std::to_string(m.preprocessing.downsample_to);
    kv["split.train_count"] = std::to_string(m.train_count);
    kv["split.test_count"] = std::to_string(m.test_count);
    for (const auto& [k, v] : m.digests) kv["digest." + k] = v;

    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

CorpusManifest manifest_from_text(const std::string& text) {
    CorpusManifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("manifest: expected key=value, got '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);

        if (key == "format.version") {
            if (value != "1") throw FormatError("manifest: unsupported version " + value);
        } else if (key == "medium.regime") {
            if (value == "thick") m.medium.regime = Regime::Thick;
            else if (value == "thin") m.medium.regime = Regime::Thin;
            else throw FormatError("manifest: unknown regime '" + value + "'");
        } else if (key == "medium.object_side") {
            m.medium.object_side = static_cast<Eigen::Index>(parse_u64(value));
        } else if (key == "medium.speckle_side") {
            m.medium.speckle_side = static_cast<Eigen::Index>(parse_u64(value));
        } else if (key == "medium.seed") {
            m.medium.seed = parse_u64(value);
        } else if (key == "medium.thickness_mm") {
            m.medium.thickness_mm = parse_double(value);
        } else if (key == "medium.ls_um") {
            m.medium.ls_um = parse_double(value);
        } else if (key == "medium.noise.photon_scale") {
            m.medium.noise.photon_scale = parse_double(value);
        } else if (key == "medium.noise.read_sigma") {
            m.medium.noise.read_sigma = parse_double(value);
        } else if (key == "medium.normalization") {
            if (value != "mean-one") throw FormatError("manifest: unsupported normalization");
        } else if (key == "preprocessing.magnify") {
            m.preprocessing.magnify = static_cast<int>(parse_u64(value));
        } else if (key == "preprocessing.pad_to") {
            m.preprocessing.pad_to = static_cast<int>(parse_u64(value));
        } else if (key == "preprocessing.downsample_to") {
            m.preprocessing.downsample_to = static_cast<int>(parse_u64(value));
        } else if (key == "split.train_count") {
            m.train_count = parse_u64(value);
        } else if (key == "split.test_count") {
            m.test_count = parse_u64(value);
        } else if (key.starts_with("digest.")) {
            m.digests[key.substr(7)] = value;
        } else {
            throw FormatError("manifest: unknown key '" + key + "'");
        }
    }
    return m;
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return manifest_from_text(std::string(bytes.begin(), bytes.end()));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> serialize_shard(const std::vector<Sample>& samples) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kShardMagic, kShardMagic + 4);
    append_u16le(out, kShardVersion);
    append_u64le(out, samples.size());
    for (const Sample& s : samples) {
        append_i16le(out, s.label);
        for (Eigen::Index i = 0; i < s.object.size(); ++i)
            append_f32le(out, static_cast<float>(s.object.data()[i]));
        for (Eigen::Index i = 0; i < s.speckle.grid.size(); ++i)
            append_f32le(out, static_cast<float>(s.speckle.grid.data()[i]));
    }
    return out;
}

std::vector<Sample> parse_shard(std::span<const std::uint8_t> bytes,
                                Eigen::Index object_side, Eigen::Index speckle_side) {
    if (bytes.size() < 14 || !std::equal(kShardMagic, kShardMagic + 4, bytes.begin()))
        throw FormatError("shard: bad magic (want SPKC)");
    ByteReader reader(bytes.subspan(4));
    if (reader.u16le() != kShardVersion) throw FormatError("shard: unsupported version");
    const std::uint64_t count = reader.u64le();

    const std::size_t object_len = static_cast<std::size_t>(object_side) * object_side;
    const std::size_t speckle_len = static_cast<std::size_t>(speckle_side) * speckle_side;
    const std::size_t record = 2 + 4 * (object_len + speckle_len);
    if (reader.remaining() != count * record)
        throw FormatError("shard: payload length mismatch");

    std::vector<Sample> samples;
    samples.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Sample s;
        s.label = reader.i16le();
        s.object.resize(object_side, object_side);
        for (Eigen::Index j = 0; j < s.object.size(); ++j)
            s.object.data()[j] = static_cast<double>(reader.f32le());
        s.speckle.grid.resize(speckle_side, speckle_side);
        for (Eigen::Index j = 0; j < s.speckle.grid.size(); ++j)
            s.speckle.grid.data()[j] = static_cast<double>(reader.f32le());
        s.speckle.norm =
            s.speckle.grid.maxCoeff() > 0.0 ? NormMode::MeanOne : NormMode::Raw;
        samples.push_back(std::move(s));
    }
    return samples;
}

CorpusManifest generate_corpus(CorpusManifest manifest, const IdxImageSet& images,
                               const std::vector<std::uint8_t>& labels,
                               const std::filesystem::path& out_dir,
                               const std::map<std::string, std::string>& source_digests) {
    const std::uint64_t wanted = manifest.train_count + manifest.test_count;
    if (wanted > images.count)
        throw ConfigError("generate_corpus: need " + std::to_string(wanted) +
                          " images, source has " + std::to_string(images.count));
    if (!labels.empty() && labels.size() != images.count)
        throw ConfigError("generate_corpus: label count does not match image count");

    const Medium medium = sample_medium(manifest.medium);

    std::vector<std::uint32_t> order(images.count);
    std::iota(order.begin(), order.end(), 0u);
    SeededRng split_rng(derive_seed(manifest.medium.seed, kSplitStream));
    shuffle(order, split_rng);

    const auto make_sample = [&](std::uint64_t position) {
        const std::uint32_t idx = order[position];
        Sample s;
        s.object = preprocess(images.image(idx), static_cast<int>(images.rows),
                              static_cast<int>(images.cols), manifest.preprocessing);
        if (s.object.rows() != manifest.medium.object_side)
            throw ConfigError("generate_corpus: preprocessing yields " +
                              std::to_string(s.object.rows()) + "-pixel objects, medium expects " +
                              std::to_string(manifest.medium.object_side));
        SeededRng noise_rng(derive_seed(manifest.medium.seed, position));
        s.speckle = forward(medium, s.object, noise_rng);
        s.label = labels.empty() ? std::int16_t{-1} : static_cast<std::int16_t>(labels[idx]);
        return s;
    };

    std::vector<Sample> train, test;
    train.reserve(manifest.train_count);
    test.reserve(manifest.test_count);
    for (std::uint64_t i = 0; i < manifest.train_count; ++i) train.push_back(make_sample(i));
    for (std::uint64_t i = 0; i < manifest.test_count; ++i)
        test.push_back(make_sample(manifest.train_count + i));

    std::filesystem::create_directories(out_dir);
    const auto train_bytes = serialize_shard(train);
    const auto test_bytes = serialize_shard(test);
    write_file(out_dir / "train.spkc", train_bytes);
    write_file(out_dir / "test.spkc", test_bytes);

    manifest.digests.clear();
    manifest.digests["shard.train"] = crc32_hex(train_bytes);
    manifest.digests["shard.test"] = crc32_hex(test_bytes);
    for (const auto& [k, v] : source_digests) manifest.digests["source." + k] = v;

    const std::string text = manifest_to_text(manifest);
    write_file(out_dir / "manifest.txt",
               std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    return manifest;
}

Corpus read_corpus(const std::filesystem::path& dir) {
    Corpus corpus;
    corpus.manifest = read_manifest(dir / "manifest.txt");

    const auto load = [&](const char* name, const char* digest_key) {
        const auto bytes = read_file(dir / name);
        const auto it = corpus.manifest.digests.find(digest_key);
        if (it == corpus.manifest.digests.end())
            throw FormatError(dir.string() + ": manifest lacks " + std::string(digest_key));
        if (crc32_hex(bytes) != it->second)
            throw FormatError(dir.string() + "/" + name +
                              ": digest mismatch, shard corrupted or stale");
        return parse_shard(bytes, corpus.manifest.medium.object_side,
                           corpus.manifest.medium.speckle_side);
    };
    corpus.train = load("train.spkc", "shard.train");
    corpus.test = load("test.spkc", "shard.test");
    if (corpus.train.size() != corpus.manifest.train_count ||
        corpus.test.size() != corpus.manifest.test_count)
        throw FormatError(dir.string() + ": shard record counts disagree with manifest");
    return corpus;
}

}  // namespace speckle
