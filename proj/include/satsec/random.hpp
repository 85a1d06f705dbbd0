#pragma once

#include <cstdint>
#include <random>

namespace satsec {

/// Random stream handed to every sampler. One stream per thread.
using Rng = std::mt19937_64;

/// Independent stream for (seed, stream_id), derived through seed_seq so
/// neighbouring ids do not produce correlated states.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x5eedu};
    return Rng(seq);
}

/// Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace satsec
