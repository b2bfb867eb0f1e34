#pragma once

#include <cstdint>

namespace semidyn {

/// SplitMix64 (Steele, Lea, Flood 2014). Cheap to seed, which matters because
/// every pixel and every random orbit gets its own stream.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n >= 1. Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Seed of pixel `index` under root seed `root`. Pixel 0 keeps the root seed, so
/// a 1x1 grid reproduces the point classifiers exactly.
constexpr std::uint64_t pixel_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return root + index * 0xD1B54A32D192ED03ULL;
}

/// Seed of the j-th random sequence drawn for a point whose stream seed is `base`.
inline std::uint64_t sequence_seed(std::uint64_t base, std::uint64_t j) noexcept {
    SplitMix64 mix(base ^ (j * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
    return mix.next();
}

}  // namespace semidyn
