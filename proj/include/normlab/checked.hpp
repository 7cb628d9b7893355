#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace normlab {

// All index arithmetic is fixed-width 64-bit; overflow throws instead of
// wrapping, since a wrapped product silently corrupts ranks and bounds.

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("integer overflow: " + std::to_string(a) + " * " +
                                  std::to_string(b) + " exceeds 64 bits");
    return out;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("integer overflow: " + std::to_string(a) + " + " +
                                  std::to_string(b) + " exceeds 64 bits");
    return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

// floor(log2(x)) for x >= 1
inline std::uint32_t ilog2(std::uint64_t x) {
    return 63u - static_cast<std::uint32_t>(__builtin_clzll(x));
}

}  // namespace normlab
