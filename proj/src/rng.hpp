#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dcsim {

// SplitMix64 mixer, used for deriving per-run seeds from a root seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Decorrelated stream seed for run `index` under a shared root seed.
inline std::uint64_t deriveSeed(std::uint64_t root, std::uint64_t index) {
    return mix64(mix64(root) ^ mix64(index + 0x51ull));
}

// Deterministic random stream. Wraps mt19937_64 (whose output sequence is
// pinned by the standard) and provides bias-free helpers so results do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t nextU64() { return engine_(); }

    // Uniform in [0, 1).
    double nextReal() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n), rejection-sampled.
    std::uint64_t nextBelow(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = nextU64();
        } while (v >= limit);
        return v % n;
    }

    bool nextBool() { return (nextU64() >> 63) != 0; }

    double nextAngleDeg() { return nextReal() * 360.0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(nextBelow(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dcsim
