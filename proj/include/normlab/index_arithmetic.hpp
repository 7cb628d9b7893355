#pragma once

#include <cstdint>
#include <vector>

#include "normlab/prime_set.hpp"

namespace normlab {

// Unique factorization n = l * prod p_i^{e_i} with l coprime to every prime
// of the set. rank is the 1-based position of l in the increasing enumeration
// j_1, j_2, ... of all integers coprime to the set.
struct Decomposition {
    std::uint64_t n = 0;
    std::vector<std::uint32_t> exponents;
    std::uint64_t l_part = 0;
    std::uint64_t rank = 0;
};

Decomposition decompose(const PrimeSet& ps, std::uint64_t n);

// delta(n): the free-digit index feeding position n of the Toeplitz transform.
std::uint64_t delta(const PrimeSet& ps, std::uint64_t n);

// #{m <= x : m coprime to the set}, by inclusion-exclusion over the <= 256
// subset products of the prime set.
std::uint64_t count_l(const PrimeSet& ps, std::uint64_t x);

// j_k, the k-th coprime integer; monotone search on count_l.
std::uint64_t unrank_l(const PrimeSet& ps, std::uint64_t k);

// n ~ n' iff they share the same coprime part.
bool equivalent(const PrimeSet& ps, std::uint64_t n, std::uint64_t n2);

// All elements of K = { prod p_i^{e_i} } up to bound, sorted increasing.
std::vector<std::uint64_t> enumerate_k(const PrimeSet& ps, std::uint64_t bound);

struct GapReport {
    std::uint64_t limit = 0;   // scan covered n' <= limit
    std::uint64_t floor = 1;   // min_ratio taken over pairs with n >= floor
    std::uint64_t pair_count = 0;
    double min_ratio = 0.0;    // min (n'-n)/sqrt(n); +inf when no pair
    std::uint64_t min_pair_n = 0;
    std::uint64_t min_pair_next = 0;
    // Least n0 such that every consecutive equivalent pair with n > n0 has
    // (n'-n) > 2*sqrt(n) strictly. 0 when no pair violates at all.
    std::uint64_t empirical_n0 = 0;
};

// Scans every equivalence class with representative l <= limit and walks the
// consecutive members n = k*l <= limit.
GapReport gap_scan(const PrimeSet& ps, std::uint64_t limit, std::uint64_t floor = 1);

}  // namespace normlab
