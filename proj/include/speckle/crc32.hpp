#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace speckle {

// Reflected CRC-32 (IEEE 802.3, polynomial 0xEDB88320). Guards shard and
// checkpoint payloads; detects any single-byte corruption.
class Crc32 {
public:
    void update(std::span<const std::uint8_t> bytes) {
        for (const std::uint8_t b : bytes)
            crc_ = table()[(crc_ ^ b) & 0xFF] ^ (crc_ >> 8);
    }

    std::uint32_t value() const { return crc_ ^ 0xFFFFFFFFu; }

private:
    static const std::array<std::uint32_t, 256>& table() {
        static const std::array<std::uint32_t, 256> t = [] {
            std::array<std::uint32_t, 256> out{};
            for (std::uint32_t i = 0; i < 256; ++i) {
                std::uint32_t c = i;
                for (int k = 0; k < 8; ++k)
                    c = (c & 1) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
                out[i] = c;
            }
            return out;
        }();
        return t;
    }

    std::uint32_t crc_ = 0xFFFFFFFFu;
};

inline std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    Crc32 crc;
    crc.update(bytes);
    return crc.value();
}

inline std::string crc32_hex(std::span<const std::uint8_t> bytes) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", crc32(bytes));
    return buf;
}

}  // namespace speckle
