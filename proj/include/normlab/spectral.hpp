#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace normlab {

// M_q = sum_{k=0}^{floor(log2(l/q))} b^{-q 2^k}, exact. Collapses to b^-q as
// soon as l/q < 2.
mpq_class m_q(int base, std::uint64_t ell, std::uint64_t q);

// True when one argument is a rational power of the other, decided exactly by
// integer root extraction.
bool multiplicatively_dependent(std::uint64_t a, std::uint64_t b);

struct RieszQuery {
    int base = 2;
    std::uint64_t r = 3;       // multiplicatively independent of base
    std::uint64_t scale = 1;   // L
    std::uint64_t cutoff = 0;  // J: product runs over odd q > J
    std::uint64_t terms = 1;   // N outer terms, n = 0..N-1
    double tail_tol = 1e-9;    // truncate factors once pi r^n L b^-q < tail_tol
};

struct RieszReport {
    double value = 0.0;       // sum over n of the truncated products
    double tail_bound = 0.0;  // relative effect of all neglected factors
    std::uint64_t terms = 0;
};

// Each factor is 1/b + (b-1)/b |cos(pi r^n L b^-q)|. Phases come from the
// exact base-b digit expansion of the integer r^n L; floating point only
// touches the final cosine.
RieszReport riesz_product_sum(const RieszQuery& q);

enum class L2Mode { exact, montecarlo };

struct L2Query {
    int base = 2;
    std::uint64_t r = 3;
    std::uint64_t h = 1;
    std::uint64_t m = 0;    // sum over j = m+1 .. m+k
    std::uint64_t k = 1;
    std::uint64_t ell = 2;  // truncation length, even
    L2Mode mode = L2Mode::exact;
    std::uint64_t samples = 1000;  // montecarlo only
    std::uint64_t seed = 0;        // montecarlo only
};

struct L2Report {
    double value = 0.0;
    double stderr_est = 0.0;      // montecarlo only
    L2Mode mode = L2Mode::exact;
    std::uint64_t sequences = 0;  // enumerated or sampled
};

// Integral over the Toeplitz measure (P = {2}) of |sum_j e(r^j h x)|^2.
// Exact mode enumerates all base^(ell/2) truncated sequences and weighs each
// by base^(-ell/2); montecarlo averages over seeded mu-samples.
L2Report l2_exponential_sum_mu(const L2Query& q);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_norm = 0.0;
};

// Least-squares line through (log scale, log value).
FitResult exponent_fit(std::span<const std::pair<double, double>> pairs);

}  // namespace normlab
