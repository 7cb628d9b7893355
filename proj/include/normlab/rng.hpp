#pragma once

#include <cstdint>

namespace normlab {

// SplitMix64 (Steele, Lea & Flood; public domain reference constants).
// This is the project's one and only randomness source: a fixed 64-bit
// generator whose output depends on nothing but the seed, so every sampled
// artifact is reproducible bit for bit within a build.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw on [0, base) by rejection: accept only below the
    // largest multiple of base representable in 64 bits.
    std::uint8_t uniform_digit(std::uint32_t base) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % base;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return static_cast<std::uint8_t>(r % base);
    }

  private:
    std::uint64_t state_;
};

// The finalizer of SplitMix64 as a standalone mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Per-task seed derivation: seed XOR the mixed task index, mixed once more.
// Tasks indexed on a fixed grid therefore see streams that do not depend on
// how the grid is scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index) {
    return mix64(seed ^ mix64(task_index + 0x9e3779b97f4a7c15ull));
}

}  // namespace normlab
