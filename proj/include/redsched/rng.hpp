#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace redsched {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream k of a master seed draws from mt19937_64 seeded with
// splitmix64(master + (k+1) * golden). Streams never share state.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
    return Rng(derive_stream_seed(master, stream));
}

// Uniform in [0,1) with 53-bit resolution.
inline double uniform_double(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). Fixed-point multiply keeps the mapping
// identical on every platform; the bias is bound/2^64.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(g()) * bound) >> 64);
}

// Exponential variate with the given mean. log1p keeps u=0 finite.
inline double exp_variate(Rng& g, double mean) {
    return -std::log1p(-uniform_double(g)) * mean;
}

}  // namespace redsched
