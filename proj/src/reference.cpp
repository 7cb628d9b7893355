#include "normlab/reference.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "normlab/checked.hpp"
#include "normlab/errors.hpp"
#include "normlab/rng.hpp"
#include "riesz_digits.hpp"

namespace normlab::reference {

DigitSeq toeplitz_transform(const PrimeSet& ps, const DigitSeq& free_digits,
                            std::uint64_t out_len) {
    DigitSeq t;
    t.base = free_digits.base;
    t.digits.reserve(out_len);
    for (std::uint64_t n = 1; n <= out_len; ++n)
        t.digits.push_back(free_digits.digit_at(delta(ps, n)));
    return t;
}

namespace {

FreqReport count_simple(const DigitSeq& x, std::uint32_t k, std::uint64_t stride,
                        BlockMode mode, std::uint64_t positions) {
    FreqReport rep;
    rep.base = x.base;
    rep.block_len = k;
    rep.mode = mode;
    rep.positions = positions;
    for (std::uint64_t i = 0; i < positions; ++i) {
        std::uint64_t w = 0;
        for (std::uint32_t t = 0; t < k; ++t)
            w = w * x.base + x.digits[i * stride + t];
        ++rep.counts[w];
    }
    const double ideal = std::pow(double(x.base), -double(k));
    for (const auto& [w, c] : rep.counts)
        rep.max_dev = std::max(rep.max_dev, std::abs(double(c) / double(positions) - ideal));
    if (rep.counts.size() < checked_pow(x.base, k)) rep.max_dev = std::max(rep.max_dev, ideal);
    return rep;
}

}  // namespace

FreqReport aligned_block_freq(const DigitSeq& x, std::uint32_t k) {
    return count_simple(x, k, k, BlockMode::aligned, x.length() / k);
}

FreqReport sliding_block_freq(const DigitSeq& x, std::uint32_t k) {
    return count_simple(x, k, 1, BlockMode::sliding, x.length() - k + 1);
}

GapReport gap_scan(const PrimeSet& ps, std::uint64_t limit, std::uint64_t floor) {
    GapReport rep;
    rep.limit = limit;
    rep.floor = floor;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    const std::vector<std::uint64_t> k_elems = enumerate_k(ps, limit);
    for (std::uint64_t l = 1; l <= limit; ++l) {
        bool coprime = true;
        for (auto p : ps.primes())
            if (l % p == 0) coprime = false;
        if (!coprime) continue;
        std::uint64_t prev = 0;
        for (const std::uint64_t k : k_elems) {
            if (k > limit / l) break;
            const std::uint64_t member = k * l;
            if (prev != 0) {
                ++rep.pair_count;
                const std::uint64_t gap = member - prev;
                if (static_cast<unsigned __int128>(gap) * gap <=
                    4 * static_cast<unsigned __int128>(prev))
                    rep.empirical_n0 = std::max(rep.empirical_n0, prev);
                if (prev >= floor) {
                    const double ratio = double(gap) / std::sqrt(double(prev));
                    if (ratio < rep.min_ratio) {
                        rep.min_ratio = ratio;
                        rep.min_pair_n = prev;
                        rep.min_pair_next = member;
                    }
                }
            }
            prev = member;
        }
    }
    return rep;
}

WeylReport weyl_sum(const DigitSeq& x, std::uint64_t r, std::uint64_t h,
                    std::uint64_t terms) {
    const std::uint64_t ell = x.length();
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), x.base, ell);
    mpz_class u = (value_of(x).numerator * h) % modulus;

    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t n = 1; n <= terms; ++n) {
        u = (u * r) % modulus;
        mpz_class shifted = u << 64;
        mpz_class quot = shifted / modulus;
        const double angle =
            2.0 * std::numbers::pi * (static_cast<double>(quot.get_ui()) * 0x1p-64);
        sum += std::complex<double>{std::cos(angle), std::sin(angle)};
    }

    WeylReport rep;
    rep.r = r;
    rep.h = h;
    rep.terms = terms;
    rep.precision = ell;
    rep.value = std::abs(sum) / static_cast<double>(terms);
    return rep;
}

DigitSeq counterexample_digits(const CounterexampleParams& params, std::uint64_t length) {
    DigitSeq x;
    x.base = params.base;
    x.digits.assign(length, 0);
    for (std::uint64_t n = 4; n <= length; ++n) {
        const IndexKey key = counterexample_key(n, params.big_k);
        SplitMix64 rng(derive_seed(params.seed, (std::uint64_t(key.j) << 32) | key.m));
        x.digits[n - 1] = rng.uniform_digit(static_cast<std::uint32_t>(params.base));
    }
    return x;
}

CondIIResult condii_estimate(const DigitSeq& x, const CondIIQuery& q,
                             std::uint32_t p1, std::uint32_t p2, std::uint64_t limit) {
    CondIIResult res;
    std::uint64_t total_len = 0;
    for (std::uint32_t i1 = 0; i1 <= q.k; ++i1)
        for (std::uint32_t i2 = 0; i2 <= q.k; ++i2) total_len += q.words[i1][i2].size();
    for (std::uint64_t n = 1; n <= limit; ++n) {
        bool valid = true, match = true;
        for (std::uint32_t i1 = 0; i1 <= q.k && valid; ++i1) {
            for (std::uint32_t i2 = 0; i2 <= q.k && valid; ++i2) {
                const std::uint64_t scale =
                    std::uint64_t(p1 - 1) * (p2 - 1) * checked_pow(p1, i1) * checked_pow(p2, i2);
                const std::int64_t offset =
                    q.offsets.empty() ? 0 : q.offsets[i1][i2];
                const std::int64_t pos = static_cast<std::int64_t>(scale * n) + offset;
                const auto& word = q.words[i1][i2];
                if (pos < 1) {
                    valid = false;
                    break;
                }
                for (std::size_t t = 0; t < word.size(); ++t)
                    if (x.digit_at(pos + t) != word[t]) match = false;
            }
        }
        if (!valid) continue;
        ++res.n_effective;
        if (match) ++res.matches;
    }
    res.target = std::pow(double(x.base), -double(total_len));
    if (res.n_effective > 0) {
        res.frequency = double(res.matches) / double(res.n_effective);
        res.stderr_est = std::sqrt(res.target * (1.0 - res.target) / double(res.n_effective));
    }
    return res;
}

RieszReport riesz_product_sum(const RieszQuery& q) {
    const std::uint64_t margin = static_cast<std::uint64_t>(std::ceil(
                                     std::log(std::numbers::pi / q.tail_tol) /
                                     std::log(double(q.base)))) +
                                 1;
    detail::DigitScroll scroll(mpz_class(static_cast<unsigned long>(q.scale)), q.base);
    double sum = 0.0;
    for (std::uint64_t n = 0; n < q.terms; ++n) {
        if (n > 0) scroll.multiply(q.r);
        const std::uint64_t cutoff = scroll.size() + margin;
        double product = 1.0;
        std::uint64_t qq = q.cutoff + 1;
        if (qq % 2 == 0) ++qq;
        for (; qq <= cutoff; qq += 2) {
            const double f = scroll.frac_below(qq);
            product *= 1.0 / q.base +
                       (q.base - 1.0) / q.base * std::abs(std::cos(std::numbers::pi * f));
        }
        sum += product;
    }
    RieszReport rep;
    rep.value = sum;
    rep.tail_bound = (q.base - 1.0) / (2.0 * q.base) * q.tail_tol * q.tail_tol /
                     (1.0 - std::pow(double(q.base), -4.0));
    rep.terms = q.terms;
    return rep;
}

L2Report l2_exact(const L2Query& q) {
    const PrimeSet two({2});
    const std::uint64_t free = q.ell / 2;
    const std::uint64_t sequences = checked_pow(q.base, static_cast<std::uint32_t>(free));
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), q.base, q.ell);

    std::vector<mpz_class> coeffs(q.k);
    {
        mpz_class rj;
        mpz_powm_ui(rj.get_mpz_t(), mpz_class(static_cast<unsigned long>(q.r)).get_mpz_t(),
                    q.m + 1, modulus.get_mpz_t());
        mpz_class c = (rj * q.h) % modulus;
        for (std::uint64_t j = 0; j < q.k; ++j) {
            coeffs[j] = c;
            c = (c * q.r) % modulus;
        }
    }

    double sum = 0.0;
    std::vector<std::uint8_t> odo(free, 0);
    DigitSeq v;
    v.base = q.base;
    for (std::uint64_t step = 0; step < sequences; ++step) {
        // materialize the sequence and take its value directly
        v.digits.assign(q.ell, 0);
        for (std::uint64_t n = 1; n <= q.ell; ++n)
            v.digits[n - 1] = odo[delta(two, n) - 1];
        const mpz_class val = value_of(v).numerator;
        std::complex<double> amp{0.0, 0.0};
        for (const auto& c : coeffs) {
            mpz_class u = (c * val) % modulus;
            mpz_class shifted = u << 64;
            mpz_class quot = shifted / modulus;
            const double angle =
                2.0 * std::numbers::pi * (static_cast<double>(quot.get_ui()) * 0x1p-64);
            amp += std::complex<double>{std::cos(angle), std::sin(angle)};
        }
        sum += std::norm(amp);
        for (std::size_t i = odo.size(); i >= 1; --i) {
            if (++odo[i - 1] < q.base) break;
            odo[i - 1] = 0;
        }
    }

    L2Report rep;
    rep.mode = L2Mode::exact;
    rep.sequences = sequences;
    rep.value = sum / static_cast<double>(sequences);
    return rep;
}

}  // namespace normlab::reference
