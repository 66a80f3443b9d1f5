#pragma once

#include <cstdint>
#include <cstddef>
#include <string_view>

namespace ctxlab {

// Deterministic 64-bit utilities. All randomness in the project flows
// through Rng so that (seed -> bits) is stable across runs and platforms;
// std::mt19937 + std distributions are avoided because their stream is
// implementation defined for real distributions.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Combine a base seed with a stream index.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL);

// xoshiro256** with splitmix-expanded state.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform in [0, 1).
    double uniform01();
    double uniform(double lo, double hi);
    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);
    // Standard normal via Box-Muller.
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }
    // Index draw proportional to nonnegative weights; total must be > 0.
    int weighted_index(const double* weights, int n);

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ctxlab
