#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gatesim {

/// Seeded random stream. Same (seed, stream_id) reproduces the same sample
/// sequence on every run and platform: the engine is std::mt19937_64 (fully
/// specified by the standard) and all variates are derived from raw 64-bit
/// words here rather than through the implementation-defined std
/// distributions. Distinct stream_ids are decorrelated with a splitmix64
/// scramble of the seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint32_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          engine_(scramble(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint32_t stream_id() const { return stream_id_; }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

    /// Exponential with the given mean (inverse CDF of a canonical uniform).
    double next_exponential(double mean) {
        return -mean * std::log1p(-next_uniform());
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

    /// Uniform index in [0, n); n must be >= 1.
    std::size_t next_index(std::size_t n) {
        auto i = static_cast<std::size_t>(next_uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t scramble(std::uint64_t seed, std::uint32_t stream_id) {
        std::uint64_t x = splitmix64(seed);
        x = splitmix64(x ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
        return x;
    }

    std::uint64_t seed_;
    std::uint32_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace gatesim
