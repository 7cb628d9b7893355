#include "normlab/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "normlab/checked.hpp"
#include "normlab/errors.hpp"
#include "normlab/rng.hpp"
#include "normlab/toeplitz.hpp"
#include "riesz_digits.hpp"

namespace normlab {

mpq_class m_q(int base, std::uint64_t ell, std::uint64_t q) {
    if (base < 2) throw std::invalid_argument("m_q: base must be >= 2");
    if (q < 1 || q > ell) throw std::invalid_argument("m_q: need 1 <= q <= ell");
    mpq_class sum = 0;
    for (std::uint64_t power = q; power <= ell; power *= 2) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), base, power);
        sum += mpq_class(1) / mpq_class(den);
        if (power > ell / 2) break;  // next power of two of q would pass ell
    }
    return sum;
}

namespace {

std::uint64_t integer_root(std::uint64_t x, std::uint32_t e) {
    mpz_class root;
    mpz_class v(static_cast<unsigned long>(x));
    mpz_root(root.get_mpz_t(), v.get_mpz_t(), e);
    return root.get_ui();
}

std::uint64_t primitive_base(std::uint64_t x) {
    for (;;) {
        bool reduced = false;
        for (std::uint32_t e = ilog2(x); e >= 2; --e) {
            const std::uint64_t root = integer_root(x, e);
            if (root >= 2 && checked_pow(root, e) == x) {
                x = root;
                reduced = true;
                break;
            }
        }
        if (!reduced) return x;
    }
}

}  // namespace

bool multiplicatively_dependent(std::uint64_t a, std::uint64_t b) {
    if (a < 2 || b < 2)
        throw std::invalid_argument("multiplicative dependence needs arguments >= 2");
    return primitive_base(a) == primitive_base(b);
}

namespace {

void validate_riesz(const RieszQuery& q) {
    if (q.base < 2 || q.base > 255)
        throw std::invalid_argument("riesz: base must be in [2, 255]");
    if (q.r < 2 || q.r > (std::uint64_t{1} << 31))
        throw std::invalid_argument("riesz: r must be in [2, 2^31]");
    if (q.scale < 1) throw std::invalid_argument("riesz: L must be positive");
    if (q.terms < 1) throw std::invalid_argument("riesz: need at least one term");
    if (!(q.tail_tol > 0.0 && q.tail_tol < 1.0))
        throw std::invalid_argument("riesz: tail_tol must lie in (0, 1)");
    if (multiplicatively_dependent(q.r, static_cast<std::uint64_t>(q.base)))
        throw std::invalid_argument("riesz: r and base are multiplicatively dependent");
}

// Truncated product over odd q' in (J, cutoff]. Beyond the cutoff every
// phase is below tail_tol/pi, and |cos(pi x)| >= 1 - (pi x)^2 / 2 bounds the
// neglected factors' joint effect.
double riesz_term(const detail::DigitScroll& scroll, const RieszQuery& q,
                  std::uint64_t margin) {
    const std::uint64_t cutoff = scroll.size() + margin;
    const double b = q.base;
    double product = 1.0;
    for (std::uint64_t qq = q.cutoff + 1 + ((q.cutoff + 1) % 2 == 0 ? 1 : 0); qq <= cutoff;
         qq += 2) {
        const double f = scroll.frac_below(qq);
        product *= 1.0 / b + (b - 1.0) / b * std::abs(std::cos(std::numbers::pi * f));
    }
    return product;
}

// digits needed so that pi * base^-margin < tol
std::uint64_t tail_margin(int base, double tol) {
    return static_cast<std::uint64_t>(
               std::ceil(std::log(std::numbers::pi / tol) / std::log(double(base)))) +
           1;
}

double tail_bound_of(const RieszQuery& q) {
    const double b = q.base;
    return (b - 1.0) / (2.0 * b) * q.tail_tol * q.tail_tol / (1.0 - std::pow(b, -4.0));
}

}  // namespace

RieszReport riesz_product_sum(const RieszQuery& q) {
    validate_riesz(q);
    const std::uint64_t margin = tail_margin(q.base, q.tail_tol);
    // Work scales with terms * digits(r^N L); refuse runaway parameters.
    const double final_digits = static_cast<double>(q.terms) *
                                    std::log2(static_cast<double>(q.r)) /
                                    std::log2(static_cast<double>(q.base)) +
                                64 + static_cast<double>(margin);
    if (final_digits > 4e6 || static_cast<double>(q.terms) * final_digits > 4.3e9)
        throw CapacityError("riesz: truncation would not terminate within budget");

    const std::uint64_t kChunk = 64;
    const std::uint64_t n_chunks = (q.terms + kChunk - 1) / kChunk;
    std::vector<double> partial(n_chunks, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t n_lo = c * kChunk;
        const std::uint64_t n_hi = std::min(q.terms - 1, n_lo + kChunk - 1);
        mpz_class start;  // r^{n_lo} * L
        mpz_ui_pow_ui(start.get_mpz_t(), q.r, n_lo);
        start *= q.scale;
        detail::DigitScroll scroll(start, q.base);
        double sum = 0.0;
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            sum += riesz_term(scroll, q, margin);
            if (n < n_hi) scroll.multiply(q.r);
        }
        partial[c] = sum;
    }

    while (partial.size() > 1) {
        std::vector<double> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = partial[2 * i];
            if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
        }
        partial.swap(next);
    }

    RieszReport rep;
    rep.value = partial[0];
    rep.tail_bound = tail_bound_of(q);
    rep.terms = q.terms;
    return rep;
}

namespace {

void validate_l2(const L2Query& q) {
    if (q.base < 2 || q.base > 255)
        throw std::invalid_argument("l2: base must be in [2, 255]");
    if (q.r < 2) throw std::invalid_argument("l2: r must be >= 2");
    if (q.h < 1) throw std::invalid_argument("l2: h must be >= 1");
    if (q.k < 1) throw std::invalid_argument("l2: k must be >= 1");
    const double logr_b = std::log(double(q.base)) / std::log(double(q.r));
    if (static_cast<double>(q.m) < static_cast<double>(q.k) + 1.0 + 2.0 * logr_b)
        throw std::invalid_argument("l2: invariant m >= k + 1 + 2 log_r b violated: m=" +
                                    std::to_string(q.m) + " < " +
                                    std::to_string(double(q.k) + 1.0 + 2.0 * logr_b));
    if (q.ell % 2 != 0) throw std::invalid_argument("l2: ell must be even");
    const double need = static_cast<double>(q.m + q.k + 1) * std::log(double(q.r)) /
                            std::log(double(q.base)) +
                        std::log(double(q.h)) / std::log(double(q.base));
    if (static_cast<double>(q.ell) < need)
        throw std::invalid_argument(
            "l2: invariant ell >= (m+k+1) log_b r + log_b h violated: ell=" +
            std::to_string(q.ell) + " < " + std::to_string(need));
}

std::complex<double> unit_phase(double phase) {
    const double angle = 2.0 * std::numbers::pi * phase;
    return {std::cos(angle), std::sin(angle)};
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

// |sum_j e(c_j V / modulus)|^2 with exact 64-bit phase numerators
double amplitude_sq(std::uint64_t v, std::span<const std::uint64_t> coeffs,
                    std::uint64_t modulus) {
    std::complex<double> s{0.0, 0.0};
    for (const std::uint64_t c : coeffs) {
        const std::uint64_t u = mulmod_u64(c, v, modulus);
        s += unit_phase(static_cast<double>(static_cast<long double>(u) /
                                            static_cast<long double>(modulus)));
    }
    return std::norm(s);
}

L2Report l2_exact_impl(const L2Query& q) {
    const PrimeSet two({2});
    const std::uint64_t free = q.ell / 2;  // odd positions up to an even ell

    const double modulus_bits = static_cast<double>(q.ell) * std::log2(double(q.base));
    if (modulus_bits > 63)
        throw CapacityError("l2 exact: modulus base^ell exceeds 64 bits");
    const std::uint64_t modulus = checked_pow(q.base, static_cast<std::uint32_t>(q.ell));

    const std::uint64_t budget = enumeration_budget();
    double count = std::pow(double(q.base), double(free));
    if (count > static_cast<double>(budget))
        throw CapacityError("l2 exact: base^" + std::to_string(free) +
                            " sequences exceed budget " + std::to_string(budget));
    const std::uint64_t sequences = checked_pow(q.base, static_cast<std::uint32_t>(free));

    // weight of free digit idx: sum of base^(ell-n) over positions n with
    // delta(n) = idx
    std::vector<std::uint64_t> weight(free, 0);
    for (std::uint64_t n = 1; n <= q.ell; ++n) {
        const std::uint64_t idx = delta(two, n) - 1;
        weight[idx] += checked_pow(q.base, static_cast<std::uint32_t>(q.ell - n));
    }

    std::vector<std::uint64_t> coeffs(q.k);  // r^j h mod modulus, j = m+1..m+k
    {
        mpz_class mod_z(static_cast<unsigned long>(modulus));
        mpz_class rj;
        mpz_powm_ui(rj.get_mpz_t(), mpz_class(static_cast<unsigned long>(q.r)).get_mpz_t(),
                    q.m + 1, mod_z.get_mpz_t());
        mpz_class c = (rj * q.h) % mod_z;
        for (std::uint64_t j = 0; j < q.k; ++j) {
            coeffs[j] = c.get_ui();
            c = (c * q.r) % mod_z;
        }
    }

    // Fixed task grid over the leading free digits; the remaining digits run
    // on an odometer with incremental value updates.
    std::uint32_t split = 0;
    std::uint64_t tasks = 1;
    while (split < free && tasks < 64) {
        tasks *= q.base;
        ++split;
    }
    const std::uint64_t per_task = sequences / tasks;
    std::vector<double> partial(tasks, 0.0);

#pragma omp parallel for schedule(static)
    for (std::uint64_t task = 0; task < tasks; ++task) {
        std::uint64_t v = 0;
        std::uint64_t t = task;
        for (std::uint32_t i = split; i >= 1; --i) {  // digit i-1 of the prefix
            v += (t % q.base) * weight[i - 1];
            t /= q.base;
        }
        std::vector<std::uint8_t> odo(free - split, 0);
        double sum = 0.0;
        for (std::uint64_t step = 0;;) {
            sum += amplitude_sq(v % modulus, coeffs, modulus);
            if (++step >= per_task) break;
            std::size_t i = odo.size();
            while (true) {
                if (++odo[i - 1] < q.base) {
                    v += weight[split + i - 1];
                    break;
                }
                odo[i - 1] = 0;
                v -= std::uint64_t(q.base - 1) * weight[split + i - 1];
                --i;
            }
        }
        partial[task] = sum;
    }

    while (partial.size() > 1) {
        std::vector<double> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = partial[2 * i];
            if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
        }
        partial.swap(next);
    }

    L2Report rep;
    rep.mode = L2Mode::exact;
    rep.sequences = sequences;
    rep.value = partial[0] / static_cast<double>(sequences);
    return rep;
}

L2Report l2_montecarlo_impl(const L2Query& q) {
    if (q.samples < 2) throw std::invalid_argument("l2 montecarlo: need >= 2 samples");
    const PrimeSet two({2});
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

    const std::uint64_t kChunk = 16;
    const std::uint64_t n_chunks = (q.samples + kChunk - 1) / kChunk;
    std::vector<double> part_sum(n_chunks, 0.0), part_sumsq(n_chunks, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        double s = 0.0, s2 = 0.0;
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(q.samples, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            SampleSpec spec{two, q.base, q.ell, derive_seed(q.seed, i)};
            const DigitSeq x = sample_mu(spec);
            const mpz_class v = value_of(x).numerator;
            std::complex<double> amp{0.0, 0.0};
            for (const auto& coeff : coeffs) {
                mpz_class u = (coeff * v) % modulus;
                mpz_class shifted = u << 64;
                mpz_class quot = shifted / modulus;
                amp += unit_phase(static_cast<double>(quot.get_ui()) * 0x1p-64);
            }
            const double a = std::norm(amp);
            s += a;
            s2 += a * a;
        }
        part_sum[c] = s;
        part_sumsq[c] = s2;
    }

    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        sum += part_sum[c];
        sumsq += part_sumsq[c];
    }
    const double n = static_cast<double>(q.samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));

    L2Report rep;
    rep.mode = L2Mode::montecarlo;
    rep.sequences = q.samples;
    rep.value = mean;
    rep.stderr_est = std::sqrt(var / n);
    return rep;
}

}  // namespace

L2Report l2_exponential_sum_mu(const L2Query& q) {
    validate_l2(q);
    return q.mode == L2Mode::exact ? l2_exact_impl(q) : l2_montecarlo_impl(q);
}

FitResult exponent_fit(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 3)
        throw std::invalid_argument("exponent_fit: need at least 3 pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [scale, value] : pairs) {
        if (scale <= 0.0 || value <= 0.0)
            throw std::invalid_argument("exponent_fit: scales and values must be positive");
        const double lx = std::log(scale), ly = std::log(value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(pairs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("exponent_fit: degenerate scales");

    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (const auto& [scale, value] : pairs) {
        const double resid = std::log(value) - (fit.intercept + fit.slope * std::log(scale));
        rss += resid * resid;
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

}  // namespace normlab
