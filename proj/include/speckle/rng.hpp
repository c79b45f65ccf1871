#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <utility>

namespace speckle {

inline constexpr double kPi = 3.14159265358979323846;

// splitmix64 (Steele, Lea, Flood). Used for state seeding and seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent child seed for stream `index` of a parent seed. Corpus noise,
// per-restart retrieval starts and per-sample jitter all derive from this,
// so results do not depend on evaluation order or thread count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s) ^ (index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL);
    return splitmix64(mixed);
}

// xoshiro256** (Blackman, Vigna). Fixed algorithm, 256-bit state, identical
// streams for identical seeds on every platform. State is seeded from the
// 64-bit seed via splitmix64 as the authors recommend.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
        const std::uint64_t limit = UINT64_MAX - rem;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x > limit);
        return x % n;
    }

    double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_;
    std::uint64_t seed_;
};

// Box-Muller transform of two uniforms, u1 in (0,1], u2 in [0,1).
inline std::pair<double, double> box_muller(double u1, double u2) {
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

// Two independent standard-normal variates; consumes exactly two uniforms.
// u1 is mapped to (0,1] so the log stays finite.
inline std::pair<double, double> gaussian_pair(SeededRng& rng) {
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return box_muller(u1, u2);
}

// Stream of single normal variates over gaussian_pair, caching the spare.
class GaussianStream {
public:
    explicit GaussianStream(SeededRng& rng) : rng_(rng) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto [a, b] = gaussian_pair(rng_);
        spare_ = b;
        has_spare_ = true;
        return a;
    }

private:
    SeededRng& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Fisher-Yates shuffle driven by SeededRng.
template <typename T, typename Alloc, template <typename, typename> class Container>
void shuffle(Container<T, Alloc>& items, SeededRng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace speckle
