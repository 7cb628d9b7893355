#pragma once

// Brute-force oracles for the test suites. Everything here is deliberately
// naive and independent of the library's computation paths: sieves instead of
// inclusion-exclusion, trial division instead of valuation stripping, straight
// std::mt19937_64 streams as the i.i.d. baseline.

#include <cstdint>
#include <random>
#include <vector>

#include "normlab/digit_seq.hpp"
#include "normlab/prime_set.hpp"

namespace oracle {

// Divisibility sieve over [1, limit]: l_members lists L in increasing order,
// rank_of[m] counts L-members <= m.
struct CoprimeSieve {
    std::vector<std::uint64_t> l_members;
    std::vector<std::uint64_t> rank_of;  // index 0..limit

    CoprimeSieve(const normlab::PrimeSet& ps, std::uint64_t limit) {
        rank_of.assign(limit + 1, 0);
        std::vector<bool> coprime(limit + 1, true);
        coprime[0] = false;
        for (auto p : ps.primes())
            for (std::uint64_t m = p; m <= limit; m += p) coprime[m] = false;
        std::uint64_t rank = 0;
        for (std::uint64_t m = 1; m <= limit; ++m) {
            if (coprime[m]) {
                ++rank;
                l_members.push_back(m);
            }
            rank_of[m] = rank;
        }
    }
};

struct TrialDecomposition {
    std::vector<std::uint32_t> exponents;
    std::uint64_t l_part;
};

inline TrialDecomposition trial_decompose(const normlab::PrimeSet& ps, std::uint64_t n) {
    TrialDecomposition d;
    d.exponents.assign(ps.size(), 0);
    d.l_part = n;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        while (d.l_part % ps[i] == 0) {
            d.l_part /= ps[i];
            ++d.exponents[i];
        }
    }
    return d;
}

// K by exhaustive filter: m is a product of set primes iff trial division by
// them reaches 1.
inline std::vector<std::uint64_t> k_by_filter(const normlab::PrimeSet& ps,
                                              std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= bound; ++m) {
        if (trial_decompose(ps, m).l_part == 1) out.push_back(m);
    }
    return out;
}

// i.i.d. uniform digit string from the standard Mersenne twister; the
// library's own sampler never touches this generator.
inline normlab::DigitSeq iid_digits(int base, std::uint64_t len, std::uint64_t seed) {
    normlab::DigitSeq x;
    x.base = base;
    x.digits.reserve(len);
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> dist(0, base - 1);
    for (std::uint64_t i = 0; i < len; ++i)
        x.digits.push_back(static_cast<std::uint8_t>(dist(gen)));
    return x;
}

}  // namespace oracle
