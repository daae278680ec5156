#pragma once

#include <cstdint>
#include <random>

namespace bqtsim {

// Seedable uniform source. Every sampling operation takes one of these by
// reference; there is no global generator.
//
// Draws are a pure function of (seed, stream id): the engine is mt19937_64,
// whose output sequence is fixed by the standard, and uniform() maps the top
// 53 bits directly instead of going through std::uniform_real_distribution
// (whose algorithm is implementation-defined).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Uniform on [0, 1).
    double uniform();

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    bool coin() { return (engine_() >> 63) != 0; }

    // Standard normal via Box-Muller.
    double normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive stream keys.
std::uint64_t mix64(std::uint64_t x);

}  // namespace bqtsim
