#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace normlab {

// A finite set of distinct primes p_1 < ... < p_r, 1 <= r <= 8. Everything in
// the index arithmetic is driven by this set: the multiplicative lattice K of
// products of these primes, and the coprime complement L.
class PrimeSet {
  public:
    explicit PrimeSet(std::vector<std::uint32_t> primes);

    std::span<const std::uint32_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

    bool operator==(const PrimeSet&) const = default;

  private:
    std::vector<std::uint32_t> primes_;
};

// Deterministic primality check by trial division (6k+-1 wheel).
bool is_prime(std::uint64_t n);

}  // namespace normlab
