#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "normlab/digit_seq.hpp"

namespace normlab {

// Positions removed from each window of length (p1*p2)^(k+1): those divisible
// by p1^(k+1) or p2^(k+1).
struct RemovalSet {
    std::uint32_t p1 = 2, p2 = 3;
    std::uint32_t level = 0;      // k
    std::uint64_t i_size = 0;     // (p1*p2)^(k+1)
    std::vector<std::uint64_t> removed;  // J, sorted
    std::vector<std::uint64_t> kept;     // I \ J, sorted
};

RemovalSet removal_set(std::uint32_t p1, std::uint32_t p2, std::uint32_t k);

// Subsequence of w at the kept positions, in increasing position order.
std::vector<std::uint8_t> rho_j(const RemovalSet& rs, std::span<const std::uint8_t> w);

// Fixed rearrangement sending the kept symbols to the concatenation order of
// the (k+1)^2 source blocks: out[t] = in[map[t]] (0-based).
struct SigmaPerm {
    std::vector<std::uint32_t> map;
};

SigmaPerm sigma_perm(const RemovalSet& rs);

std::vector<std::uint8_t> apply_perm(const SigmaPerm& sigma,
                                     std::span<const std::uint8_t> w);

// Verifies that sigma(rho_J(w_i)) equals the concatenation over i1, i2 of the
// blocks of x of length (p1-1)(p2-1)p1^i1 p2^i2 starting at position
// (p1-1)(p2-1)p1^i1 p2^i2 (i-1)+1, where w_i is the i-th length-i_size window
// of the Toeplitz transform of x for P = {p1, p2}.
bool lemma5_check(const DigitSeq& x, const RemovalSet& rs, std::uint64_t window_index);

// Family of words u_{i1,i2}, 0 <= i1,i2 <= k, expected at positions
// (p1-1)(p2-1) p1^i1 p2^i2 n + offset_{i1,i2}.
struct CondIIQuery {
    std::uint32_t k = 0;
    std::vector<std::vector<std::vector<std::uint8_t>>> words;    // [i1][i2]
    std::vector<std::vector<std::int64_t>> offsets;               // [i1][i2], default 0
};

struct CondIIResult {
    std::uint64_t n_effective = 0;  // n with every position valid
    std::uint64_t matches = 0;
    double frequency = 0.0;         // matches / n_effective
    double target = 0.0;            // b^{-sum |u|}
    double stderr_est = 0.0;        // binomial standard error at the target
};

// Occurrence means the word starts exactly at the stated 1-based position.
// Positions < 1 (possible under negative offsets) drop that n from the
// denominator.
CondIIResult condii_estimate(const DigitSeq& x, const CondIIQuery& q,
                             std::uint32_t p1, std::uint32_t p2, std::uint64_t limit);

// Counts n <= limit with d_{4n-2} != d_{4n-1} where d is the Toeplitz
// transform (P = {2}) of t. Zero for every Toeplitz input: the transform of a
// Toeplitz sequence repeats digits at adjacent positions 4n-2, 4n-1, so it is
// never normal. Requires t itself to pass is_toeplitz for P = {2}.
std::uint64_t double_transform_witness(const DigitSeq& t, std::uint64_t limit);

}  // namespace normlab
