#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace topgraph {

/// Deterministic random source. std::mt19937_64 is fully specified by the
/// standard, so raw draws are bit-identical across platforms; the library
/// never uses std::*_distribution (their output is implementation-defined).
///
/// Stream splitting: substream(tag) hashes (seed, tag) through splitmix64
/// and seeds a fresh generator. Checkpoint-time evaluation draws from a
/// substream so an eval cadence change never perturbs the training stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, n) via bitmask rejection (no modulo bias).
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1 | 1);
        for (;;) {
            std::uint64_t v = gen_() & mask;
            if (v < n) return v;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal() {
        double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        double u2 = uniform_real();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Rng substream(std::uint64_t tag) const { return Rng(splitmix64(seed_ ^ splitmix64(tag))); }

    Rng substream(std::string_view name, std::uint64_t index = 0) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (char c : name) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 1099511628211ull;
        }
        return substream(h ^ splitmix64(index));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace topgraph
