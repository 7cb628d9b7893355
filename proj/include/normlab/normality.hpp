#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "normlab/digit_seq.hpp"

namespace normlab {

enum class BlockMode { aligned, sliding };

// Occurrence counts of length-k words and the worst deviation from the ideal
// frequency base^-k. Aligned mode reads the sequence as base^k digits
// (positions 1, k+1, 2k+1, ...); sliding counts every position.
struct FreqReport {
    int base = 2;
    std::uint32_t block_len = 1;
    BlockMode mode = BlockMode::aligned;
    std::uint64_t positions = 0;                    // N
    std::map<std::uint64_t, std::uint64_t> counts;  // word value -> count
    double max_dev = 0.0;
};

FreqReport aligned_block_freq(const DigitSeq& x, std::uint32_t k);
FreqReport sliding_block_freq(const DigitSeq& x, std::uint32_t k);

// Row k-1 holds aligned_block_freq(x, k).max_dev, k = 1..kmax.
std::vector<double> normality_score(const DigitSeq& x, std::uint32_t kmax);

// Word value <-> printable key ("0110" for base <= 10, comma-separated
// decimal digits otherwise).
std::string word_key(int base, std::uint32_t k, std::uint64_t value);

struct WeylReport {
    std::uint64_t r = 2;
    std::uint64_t h = 1;
    std::uint64_t terms = 0;      // N
    std::uint64_t precision = 0;  // modulus exponent: phases taken mod base^precision
    double value = 0.0;           // |S_N| / N
};

// S_N = sum_{n=1..N} e(r^n h x) with each phase reduced exactly modulo
// base^len(x) in integer arithmetic before the complex exponential. The
// precondition N log_b r + log_b h + 64 log_b 2 <= len(x) keeps the digits
// beyond the sequence end irrelevant to every phase up to 2^-64.
WeylReport weyl_sum(const DigitSeq& x, std::uint64_t r, std::uint64_t h,
                    std::uint64_t terms);

// Least sequence length accepted by the precision guard.
std::uint64_t weyl_required_length(int base, std::uint64_t r, std::uint64_t h,
                                   std::uint64_t terms);

}  // namespace normlab
