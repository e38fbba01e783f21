#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace cyclic {

/// SplitMix64 finalizer (Steele, Lea & Flood).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of replication `index` in the ensemble seeded with `seed`.
/// Depends only on (seed, index), never on scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

/// One reproducible stream of random variates.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// The std distributions are not (their algorithms are implementation
/// defined), so the variates are derived from raw 64-bit words here.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream substream(std::uint64_t seed, std::uint64_t index)
    {
        return RngStream(substream_seed(seed, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    /// Uniform integer in [0, n), unbiased (rejection on the top remainder).
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cyclic
