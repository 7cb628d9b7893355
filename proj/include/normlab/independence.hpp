#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "normlab/digit_seq.hpp"

namespace normlab {

// Digit process with prescribed short-range independence: X_n = Z_{j,m} with
// j = floor(log2 n), r the largest power of two with 2^(2^r) <= n, and
// m = n mod 2Kr. K must be a positive power of two.
struct CounterexampleParams {
    int base = 2;
    std::uint32_t big_k = 1;  // K
    std::uint64_t seed = 0;
};

struct IndexKey {
    std::uint32_t j = 0;
    std::uint32_t m = 0;
    std::uint32_t r = 0;

    bool operator==(const IndexKey&) const = default;
    // (j, m) identifies the source variable Z_{j,m}; r only sets the modulus.
    std::uint64_t packed() const { return (std::uint64_t(j) << 32) | m; }
};

// Defined for n >= 4 only (2^(2^1) = 4); smaller n have the fixed digits 000.
IndexKey counterexample_key(std::uint64_t n, std::uint32_t big_k);

// X_1 X_2 X_3 = 000, then X_n = Z_{key(n)}. Each Z_{j,m} is produced by a
// generator seeded from (seed, j, m), so a digit's value never depends on
// which other digits were queried.
DigitSeq counterexample_digits(const CounterexampleParams& params, std::uint64_t length);

struct WindowViolation {
    std::uint64_t n;            // window start
    std::uint64_t pos1, pos2;   // colliding indices within [n, n+window(n)]
    std::uint64_t key;
};

// Checks, for each n in [begin, end], that the keys of n..n+window(n) are
// pairwise distinct; returns the first collision found. Keys beyond `end` are
// evaluated as needed. Runs a sliding multiset so the literal check stays
// linear in the scanned range.
std::optional<WindowViolation> window_certify(
    const std::function<std::uint64_t(std::uint64_t)>& key_of, std::uint64_t begin,
    std::uint64_t end, const std::function<std::uint64_t(std::uint64_t)>& window_len);

struct DyadicRow {
    std::uint32_t j = 0;
    int digit = 0;
    double deviation = 0.0;        // | freq(digit in [2^j, 2^{j+1})) - 1/b |
    std::uint64_t pattern_len = 0;  // 2Kr, 0 when no params given
    std::uint64_t repeats = 0;      // 2^j / (2Kr)
    bool structure_ok = true;       // X_n == X_{n+2Kr} throughout the block
};

struct DyadicReport {
    int digit = 0;
    std::vector<DyadicRow> rows;  // j = 2 .. largest with 2^{j+1}-1 <= len(x)
};

// Per-dyadic-block frequency deviation of one digit; with params also checks
// the repeat structure of each block.
DyadicReport dyadic_block_report(const DigitSeq& x, int digit,
                                 std::optional<CounterexampleParams> params = {});

}  // namespace normlab
