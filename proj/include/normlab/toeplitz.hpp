#pragma once

#include <cstdint>
#include <vector>

#include "normlab/digit_seq.hpp"
#include "normlab/index_arithmetic.hpp"
#include "normlab/prime_set.hpp"

namespace normlab {

// t_n = a_{delta(n)} for n = 1..out_len. The input must cover every free
// index the prefix consumes, i.e. length(a) >= count_l(out_len).
DigitSeq toeplitz_transform(const PrimeSet& ps, const DigitSeq& free_digits,
                            std::uint64_t out_len);

// a_k = t_{j_k} for every coprime index j_k <= length(t).
DigitSeq extract_free(const PrimeSet& ps, const DigitSeq& t);

struct ToeplitzViolation {
    std::uint64_t n;
    std::size_t prime_index;  // i with t_n != t_{n*p_i}
    bool operator==(const ToeplitzViolation&) const = default;
};

// Every (n, i) with n*p_i <= length(t) and t_n != t_{n*p_i}; empty means t is
// a valid prefix of a Toeplitz sequence.
std::vector<ToeplitzViolation> is_toeplitz(const PrimeSet& ps, const DigitSeq& t);

struct SampleSpec {
    PrimeSet primes;
    int base = 2;
    std::uint64_t length = 1;
    std::uint64_t seed = 0;
};

// Draws the free digits i.i.d. uniform from the seeded generator and pushes
// them through the transform. Free digits are generated on a fixed grid of
// 4096-digit chunks with per-chunk derived seeds, so the output is identical
// no matter how many threads run the fill.
DigitSeq sample_mu(const SampleSpec& spec);

// Number of free digits feeding a length-len prefix.
std::uint64_t free_count(const PrimeSet& ps, std::uint64_t len);

// Enumeration budget: how many sequences enumerate-style operations may
// visit. NORMALITY_LAB_BUDGET overrides the default (2^24).
std::uint64_t enumeration_budget();

// Yields all length-len prefixes of Toeplitz sequences, each exactly once, in
// lexicographic order of their free digits.
class TPEnumerator {
  public:
    TPEnumerator(const PrimeSet& ps, int base, std::uint64_t len);
    TPEnumerator(const PrimeSet& ps, int base, std::uint64_t len, std::uint64_t budget);

    // Total number of sequences, base^free_count.
    std::uint64_t total() const { return total_; }

    // Fills out with the next sequence; false when exhausted.
    bool next(DigitSeq& out);

  private:
    int base_;
    std::uint64_t len_;
    std::uint64_t total_;
    bool done_ = false;
    bool first_ = true;
    std::vector<std::uint8_t> free_;       // odometer over free digits
    std::vector<std::uint64_t> delta_map_;  // delta(n)-1 for n = 1..len
};

}  // namespace normlab
