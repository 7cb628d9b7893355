#pragma once

// Serial reference implementations of the parallel kernels. These are the
// plain, obviously-correct loops; the tests hold the OpenMP kernels to them
// and the benchmark target compares their throughput.

#include "normlab/characterization.hpp"
#include "normlab/digit_seq.hpp"
#include "normlab/independence.hpp"
#include "normlab/index_arithmetic.hpp"
#include "normlab/normality.hpp"
#include "normlab/spectral.hpp"
#include "normlab/toeplitz.hpp"

namespace normlab::reference {

DigitSeq toeplitz_transform(const PrimeSet& ps, const DigitSeq& free_digits,
                            std::uint64_t out_len);

FreqReport aligned_block_freq(const DigitSeq& x, std::uint32_t k);
FreqReport sliding_block_freq(const DigitSeq& x, std::uint32_t k);

GapReport gap_scan(const PrimeSet& ps, std::uint64_t limit, std::uint64_t floor = 1);

WeylReport weyl_sum(const DigitSeq& x, std::uint64_t r, std::uint64_t h,
                    std::uint64_t terms);

DigitSeq counterexample_digits(const CounterexampleParams& params, std::uint64_t length);

CondIIResult condii_estimate(const DigitSeq& x, const CondIIQuery& q,
                             std::uint32_t p1, std::uint32_t p2, std::uint64_t limit);

RieszReport riesz_product_sum(const RieszQuery& q);

L2Report l2_exact(const L2Query& q);

}  // namespace normlab::reference
