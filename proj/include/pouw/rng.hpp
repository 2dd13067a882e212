// Seeded RNG for reproducible simulations. SplitMix64: a 64-bit
// counter-with-finalizer generator, so nearby seeds still give
// decorrelated streams and per-point streams can be derived cheaply.
#pragma once

#include <cmath>
#include <cstdint>

namespace pouw {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Geometric number of rounds until first success, support {1, 2, ...}.
    /// Inverse transform; p = 1 returns 1.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) return 1;
        const double u = next_double();
        const double t = std::ceil(std::log1p(-u) / std::log1p(-p));
        return t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
    }

  private:
    std::uint64_t state_;
};

/// Stream seed for a sweep point. The xor'ed index lands in a different
/// SplitMix64 orbit position; the finalizer decorrelates neighbours.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t point_index) {
    return seed ^ point_index;
}

}  // namespace pouw
