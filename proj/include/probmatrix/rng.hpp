#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace probmatrix {

/// Seedable generator used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The std::*_distribution adaptors are implementation-defined, so
/// the conversions to uniform and normal variates are done here: uniform()
/// takes the top 53 bits of one draw, normal() uses the Marsaglia polar
/// method on pairs of uniforms. Uniform draws reproduce bit-for-bit on any
/// conforming platform; normal draws additionally depend on libm's log.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Uniform integer on [0, n). Uses rejection to avoid modulo bias.
    std::uint64_t below(std::uint64_t n);

    double normal();

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// FNV-1a; stable across platforms, used to key substreams by name.
constexpr std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace probmatrix
