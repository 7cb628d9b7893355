#include "normlab/toeplitz.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "normlab/checked.hpp"
#include "normlab/errors.hpp"
#include "normlab/rng.hpp"

namespace normlab {

std::uint64_t free_count(const PrimeSet& ps, std::uint64_t len) {
    return count_l(ps, len);
}

DigitSeq toeplitz_transform(const PrimeSet& ps, const DigitSeq& free_digits,
                            std::uint64_t out_len) {
    validate(free_digits);
    const std::uint64_t needed = count_l(ps, out_len);
    if (free_digits.length() < needed) {
        const std::uint64_t missing = free_digits.length() + 1;
        throw std::invalid_argument(
            "toeplitz_transform: input has " + std::to_string(free_digits.length()) +
            " free digits but the prefix needs " + std::to_string(needed) +
            "; first missing free index " + std::to_string(missing) + " feeds position " +
            std::to_string(unrank_l(ps, missing)));
    }
    DigitSeq t;
    t.base = free_digits.base;
    t.digits.resize(out_len);
    const std::uint8_t* a = free_digits.digits.data();
    std::uint8_t* out = t.digits.data();
#pragma omp parallel for schedule(static)
    for (std::uint64_t n = 1; n <= out_len; ++n) {
        out[n - 1] = a[delta(ps, n) - 1];
    }
    return t;
}

DigitSeq extract_free(const PrimeSet& ps, const DigitSeq& t) {
    DigitSeq a;
    a.base = t.base;
    a.digits.reserve(count_l(ps, t.length()));
    for (std::uint64_t n = 1; n <= t.length(); ++n) {
        bool coprime = true;
        for (auto p : ps.primes()) {
            if (n % p == 0) {
                coprime = false;
                break;
            }
        }
        if (coprime) a.digits.push_back(t.digit_at(n));
    }
    return a;
}

std::vector<ToeplitzViolation> is_toeplitz(const PrimeSet& ps, const DigitSeq& t) {
    std::vector<ToeplitzViolation> out;
    const std::uint64_t len = t.length();
    for (std::uint64_t n = 1; n <= len; ++n) {
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::uint64_t np = n * ps[i];
            if (np > len) continue;
            if (t.digit_at(n) != t.digit_at(np)) out.push_back({n, i});
        }
    }
    return out;
}

namespace {

constexpr std::uint64_t kFillChunk = 4096;

// Fixed chunk grid: digit i comes from the stream seeded for chunk i/4096,
// independent of scheduling.
void fill_uniform_digits(std::uint8_t* out, std::uint64_t count, int base,
                         std::uint64_t seed) {
    const std::uint64_t n_chunks = (count + kFillChunk - 1) / kFillChunk;
#pragma omp parallel for schedule(static)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        const std::uint64_t lo = c * kFillChunk;
        const std::uint64_t hi = std::min(count, lo + kFillChunk);
        for (std::uint64_t i = lo; i < hi; ++i)
            out[i] = rng.uniform_digit(static_cast<std::uint32_t>(base));
    }
}

}  // namespace

DigitSeq sample_mu(const SampleSpec& spec) {
    if (spec.base < 2 || spec.base > 255)
        throw std::invalid_argument("sample_mu: base must be in [2, 255]");
    if (spec.length < 1) throw std::invalid_argument("sample_mu: length must be positive");
    DigitSeq a;
    a.base = spec.base;
    a.digits.resize(free_count(spec.primes, spec.length));
    fill_uniform_digits(a.digits.data(), a.digits.size(), spec.base, spec.seed);
    return toeplitz_transform(spec.primes, a, spec.length);
}

std::uint64_t enumeration_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("NORMALITY_LAB_BUDGET")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1} << 24;
    }();
    return value;
}

TPEnumerator::TPEnumerator(const PrimeSet& ps, int base, std::uint64_t len)
    : TPEnumerator(ps, base, len, enumeration_budget()) {}

TPEnumerator::TPEnumerator(const PrimeSet& ps, int base, std::uint64_t len,
                           std::uint64_t budget)
    : base_(base), len_(len) {
    if (base < 2 || base > 255)
        throw std::invalid_argument("enumerate_TP: base must be in [2, 255]");
    const std::uint64_t free = count_l(ps, len);
    // base^free, refusing anything past the budget before allocating.
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < free; ++i) {
        if (total > budget / base)
            throw CapacityError("enumerate_TP: base^" + std::to_string(free) +
                                " sequences exceed budget " + std::to_string(budget));
        total *= base;
    }
    if (total > budget)
        throw CapacityError("enumerate_TP: base^" + std::to_string(free) +
                            " sequences exceed budget " + std::to_string(budget));
    total_ = total;
    free_.assign(free, 0);
    delta_map_.resize(len);
    for (std::uint64_t n = 1; n <= len; ++n) delta_map_[n - 1] = delta(ps, n) - 1;
}

bool TPEnumerator::next(DigitSeq& out) {
    if (done_) return false;
    if (!first_) {
        // odometer over the free digits, last digit fastest
        std::size_t i = free_.size();
        while (i > 0) {
            if (++free_[i - 1] < base_) break;
            free_[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            done_ = true;
            return false;
        }
    }
    first_ = false;
    out.base = base_;
    out.digits.resize(len_);
    for (std::uint64_t n = 0; n < len_; ++n) out.digits[n] = free_[delta_map_[n]];
    if (free_.empty()) done_ = true;  // single (empty-product) sequence
    return true;
}

}  // namespace normlab
