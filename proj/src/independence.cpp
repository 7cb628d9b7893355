#include "normlab/independence.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "normlab/checked.hpp"
#include "normlab/rng.hpp"

namespace normlab {

namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

void validate_params(const CounterexampleParams& p) {
    if (p.base < 2 || p.base > 255)
        throw std::invalid_argument("counterexample: base must be in [2, 255]");
    if (!is_power_of_two(p.big_k))
        throw std::invalid_argument("counterexample: K must be a positive power of two");
}

std::uint8_t z_digit(std::uint64_t seed, std::uint32_t j, std::uint32_t m, int base) {
    SplitMix64 rng(derive_seed(seed, (std::uint64_t(j) << 32) | m));
    return rng.uniform_digit(static_cast<std::uint32_t>(base));
}

}  // namespace

IndexKey counterexample_key(std::uint64_t n, std::uint32_t big_k) {
    if (n < 4) throw std::invalid_argument("counterexample key is defined for n >= 4 only");
    IndexKey key;
    key.j = ilog2(n);
    // largest power of two r with 2^(2^r) <= n, i.e. 2^r <= floor(log2 n)
    std::uint32_t r = 1;
    while (2 * r <= 63 && (std::uint64_t{1} << (2 * r)) <= key.j) r *= 2;
    key.r = r;
    const std::uint64_t period = 2ull * big_k * r;
    key.m = static_cast<std::uint32_t>(n % period);
    return key;
}

DigitSeq counterexample_digits(const CounterexampleParams& params, std::uint64_t length) {
    validate_params(params);
    if (length < 1) throw std::invalid_argument("counterexample: length must be positive");
    DigitSeq x;
    x.base = params.base;
    x.digits.assign(length, 0);  // X_1 X_2 X_3 = 000
    std::uint8_t* out = x.digits.data();
#pragma omp parallel for schedule(static)
    for (std::uint64_t n = 4; n <= length; ++n) {
        const IndexKey key = counterexample_key(n, params.big_k);
        out[n - 1] = z_digit(params.seed, key.j, key.m, params.base);
    }
    return x;
}

std::optional<WindowViolation> window_certify(
    const std::function<std::uint64_t(std::uint64_t)>& key_of, std::uint64_t begin,
    std::uint64_t end, const std::function<std::uint64_t(std::uint64_t)>& window_len) {
    if (begin < 1 || begin > end)
        throw std::invalid_argument("window_certify: need 1 <= begin <= end");

    // Sliding multiset of the keys in [n, n + window(n)]; dupes counts keys
    // currently held more than once, so each window is checked literally at
    // amortized constant cost.
    std::unordered_map<std::uint64_t, std::uint32_t> held;
    std::uint64_t dupes = 0;
    auto insert = [&](std::uint64_t idx) {
        if (++held[key_of(idx)] == 2) ++dupes;
    };
    auto erase = [&](std::uint64_t idx) {
        auto it = held.find(key_of(idx));
        if (--it->second == 1) --dupes;
        if (it->second == 0) held.erase(it);
    };

    std::uint64_t lo = begin, hi = begin;
    insert(begin);
    for (std::uint64_t n = begin; n <= end; ++n) {
        while (lo < n) erase(lo++);
        const std::uint64_t target = n + window_len(n);
        while (hi > target) erase(hi--);
        while (hi < target) insert(++hi);
        if (dupes != 0) {
            // locate the collision for the report
            std::unordered_map<std::uint64_t, std::uint64_t> first_pos;
            for (std::uint64_t i = n; i <= target; ++i) {
                const std::uint64_t key = key_of(i);
                auto [it, fresh] = first_pos.try_emplace(key, i);
                if (!fresh) return WindowViolation{n, it->second, i, key};
            }
        }
    }
    return std::nullopt;
}

DyadicReport dyadic_block_report(const DigitSeq& x, int digit,
                                 std::optional<CounterexampleParams> params) {
    validate(x);
    if (digit < 0 || digit >= x.base)
        throw std::invalid_argument("dyadic report: digit must be below base");
    if (params) validate_params(*params);

    DyadicReport rep;
    rep.digit = digit;
    for (std::uint32_t j = 2;; ++j) {
        const std::uint64_t block_lo = std::uint64_t{1} << j;
        const std::uint64_t block_hi = (std::uint64_t{1} << (j + 1)) - 1;
        if (block_hi > x.length()) break;

        DyadicRow row;
        row.j = j;
        row.digit = digit;
        std::uint64_t hits = 0;
        for (std::uint64_t n = block_lo; n <= block_hi; ++n)
            if (x.digit_at(n) == digit) ++hits;
        row.deviation = std::abs(static_cast<double>(hits) / static_cast<double>(block_lo) -
                                 1.0 / x.base);
        if (params) {
            const std::uint32_t r = counterexample_key(block_lo, params->big_k).r;
            row.pattern_len = 2ull * params->big_k * r;
            row.repeats = block_lo / row.pattern_len;
            row.structure_ok = true;
            for (std::uint64_t n = block_lo; n + row.pattern_len <= block_hi; ++n) {
                if (x.digit_at(n) != x.digit_at(n + row.pattern_len)) {
                    row.structure_ok = false;
                    break;
                }
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace normlab
