#pragma once

#include <cstdint>
#include <random>

namespace gels {

/// SplitMix64 finaliser. Used to turn (seed, index) pairs into well-mixed,
/// statistically independent seeds for replications and shards.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform variates on the open interval (0, 1) drawn from a 64-bit
/// Mersenne Twister (MT19937-64, period 2^19937 - 1). The mapping from raw
/// 64-bit words to doubles is fixed here rather than left to
/// std::uniform_real_distribution, whose output differs across standard
/// libraries.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed);

    /// (top 53 bits + 0.5) / 2^53, never exactly 0 or 1.
    double next();

private:
    std::mt19937_64 engine_;
};

}  // namespace gels
