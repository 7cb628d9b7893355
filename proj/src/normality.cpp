#include "normlab/normality.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "normlab/checked.hpp"
#include "normlab/errors.hpp"

namespace normlab {

namespace {

// Word values are packed into 64 bits, which caps base^k; plenty at desk
// scale and checked explicitly.
std::uint64_t word_space(int base, std::uint32_t k) {
    try {
        return checked_pow(static_cast<std::uint64_t>(base), k);
    } catch (const std::overflow_error&) {
        throw CapacityError("block length " + std::to_string(k) + " over base " +
                            std::to_string(base) + " does not fit 64-bit word values");
    }
}

double max_deviation(const std::map<std::uint64_t, std::uint64_t>& counts,
                     std::uint64_t positions, int base, std::uint32_t k,
                     std::uint64_t total_words) {
    const double ideal = std::pow(static_cast<double>(base), -static_cast<double>(k));
    double dev = 0.0;
    for (const auto& [word, c] : counts) {
        (void)word;
        dev = std::max(dev,
                       std::abs(static_cast<double>(c) / static_cast<double>(positions) -
                                ideal));
    }
    if (counts.size() < total_words) dev = std::max(dev, ideal);  // some word never occurs
    return dev;
}

std::map<std::uint64_t, std::uint64_t> count_blocks(const DigitSeq& x, std::uint32_t k,
                                                    std::uint64_t stride,
                                                    std::uint64_t positions) {
    // Shard the position range; per-shard maps merge by addition.
    const std::uint64_t kChunk = 1 << 16;
    const std::uint64_t n_chunks = (positions + kChunk - 1) / kChunk;
    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(n_chunks);
    const std::uint8_t* d = x.digits.data();
    const std::uint64_t base = x.base;

#pragma omp parallel for schedule(static)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        auto& local = partial[c];
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(positions, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t start = i * stride;  // 0-based
            std::uint64_t w = 0;
            for (std::uint32_t t = 0; t < k; ++t) w = w * base + d[start + t];
            ++local[w];
        }
    }

    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto& local : partial) {
        for (const auto& [w, c] : local) counts[w] += c;
    }
    return counts;
}

FreqReport block_freq(const DigitSeq& x, std::uint32_t k, BlockMode mode) {
    validate(x);
    if (k == 0) throw std::invalid_argument("block length must be positive");
    if (x.length() < k)
        throw std::invalid_argument("sequence shorter than block length " +
                                    std::to_string(k));
    const std::uint64_t total_words = word_space(x.base, k);

    FreqReport rep;
    rep.base = x.base;
    rep.block_len = k;
    rep.mode = mode;
    if (mode == BlockMode::aligned) {
        rep.positions = x.length() / k;
        rep.counts = count_blocks(x, k, k, rep.positions);
    } else {
        rep.positions = x.length() - k + 1;
        rep.counts = count_blocks(x, k, 1, rep.positions);
    }
    rep.max_dev = max_deviation(rep.counts, rep.positions, x.base, k, total_words);
    return rep;
}

}  // namespace

FreqReport aligned_block_freq(const DigitSeq& x, std::uint32_t k) {
    return block_freq(x, k, BlockMode::aligned);
}

FreqReport sliding_block_freq(const DigitSeq& x, std::uint32_t k) {
    return block_freq(x, k, BlockMode::sliding);
}

std::vector<double> normality_score(const DigitSeq& x, std::uint32_t kmax) {
    if (kmax == 0) throw std::invalid_argument("kmax must be positive");
    std::vector<double> rows;
    rows.reserve(kmax);
    for (std::uint32_t k = 1; k <= kmax; ++k)
        rows.push_back(aligned_block_freq(x, k).max_dev);
    return rows;
}

std::string word_key(int base, std::uint32_t k, std::uint64_t value) {
    std::vector<std::uint32_t> digits(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        digits[k - 1 - i] = static_cast<std::uint32_t>(value % base);
        value /= base;
    }
    std::string out;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (base > 10 && i > 0) out += ',';
        out += std::to_string(digits[i]);
    }
    return out;
}

std::uint64_t weyl_required_length(int base, std::uint64_t r, std::uint64_t h,
                                   std::uint64_t terms) {
    const double logb = std::log(static_cast<double>(base));
    const double need = static_cast<double>(terms) * std::log(static_cast<double>(r)) / logb +
                        std::log(static_cast<double>(h)) / logb +
                        64.0 * std::numbers::ln2 / logb;
    return static_cast<std::uint64_t>(std::ceil(need));
}

namespace {

// Phase of u/M in [0,1) with error below 2^-64: the top 64 bits of the
// quotient, exact integer arithmetic throughout.
double phase_of(const mpz_class& u, const mpz_class& modulus) {
    mpz_class shifted = u << 64;
    mpz_class q = shifted / modulus;
    return static_cast<double>(q.get_ui()) * 0x1p-64;
}

std::complex<double> unit_phase(double phase) {
    const double angle = 2.0 * std::numbers::pi * phase;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

WeylReport weyl_sum(const DigitSeq& x, std::uint64_t r, std::uint64_t h,
                    std::uint64_t terms) {
    validate(x);
    if (r < 2) throw std::invalid_argument("weyl_sum: r must be >= 2");
    if (h < 1) throw std::invalid_argument("weyl_sum: h must be >= 1");
    if (terms < 1) throw std::invalid_argument("weyl_sum: need at least one term");
    const std::uint64_t required = weyl_required_length(x.base, r, h, terms);
    if (x.length() < required)
        throw std::invalid_argument(
            "weyl_sum: precision guard needs " + std::to_string(required) +
            " digits for N=" + std::to_string(terms) + ", have " +
            std::to_string(x.length()));

    const std::uint64_t ell = x.length();
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), x.base, ell);
    const mpz_class hv = (value_of(x).numerator * h) % modulus;

    // Fixed 256-term chunks, each seeded by a power jump; the pairwise tree
    // over chunk partials pins the summation shape regardless of threads.
    const std::uint64_t kChunk = 256;
    const std::uint64_t n_chunks = (terms + kChunk - 1) / kChunk;
    std::vector<std::complex<double>> partial(n_chunks, {0.0, 0.0});

#pragma omp parallel for schedule(static)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t n_lo = c * kChunk + 1;
        const std::uint64_t n_hi = std::min(terms, n_lo + kChunk - 1);
        mpz_class rn;
        mpz_powm_ui(rn.get_mpz_t(), mpz_class(r).get_mpz_t(), n_lo, modulus.get_mpz_t());
        mpz_class u = (rn * hv) % modulus;
        std::complex<double> sum{0.0, 0.0};
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            sum += unit_phase(phase_of(u, modulus));
            if (n < n_hi) u = (u * r) % modulus;
        }
        partial[c] = sum;
    }

    while (partial.size() > 1) {
        std::vector<std::complex<double>> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = partial[2 * i];
            if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
        }
        partial.swap(next);
    }

    WeylReport rep;
    rep.r = r;
    rep.h = h;
    rep.terms = terms;
    rep.precision = ell;
    rep.value = std::abs(partial[0]) / static_cast<double>(terms);
    return rep;
}

}  // namespace normlab
