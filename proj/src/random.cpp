#include "gels/random.hpp"

namespace gels {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double UniformStream::next() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * kScale;
}

}  // namespace gels
