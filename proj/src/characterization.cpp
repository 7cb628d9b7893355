#include "normlab/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "normlab/checked.hpp"
#include "normlab/index_arithmetic.hpp"
#include "normlab/prime_set.hpp"
#include "normlab/toeplitz.hpp"

namespace normlab {

RemovalSet removal_set(std::uint32_t p1, std::uint32_t p2, std::uint32_t k) {
    if (p1 == p2) throw std::invalid_argument("removal_set: primes must differ");
    if (!is_prime(p1) || !is_prime(p2))
        throw std::invalid_argument("removal_set: both entries must be prime");

    RemovalSet rs;
    rs.p1 = p1;
    rs.p2 = p2;
    rs.level = k;
    const std::uint64_t q1 = checked_pow(p1, k + 1);
    const std::uint64_t q2 = checked_pow(p2, k + 1);
    rs.i_size = checked_mul(q1, q2);
    for (std::uint64_t j = 1; j <= rs.i_size; ++j) {
        if (j % q1 == 0 || j % q2 == 0)
            rs.removed.push_back(j);
        else
            rs.kept.push_back(j);
    }
    // |J| = p1^{k+1} + p2^{k+1} - 1 and the complementary product identity;
    // construction is re-verified rather than trusted.
    if (rs.removed.size() != q1 + q2 - 1 ||
        rs.kept.size() != (q1 - 1) * (q2 - 1))
        throw std::logic_error("removal_set: cardinality identity failed");
    return rs;
}

std::vector<std::uint8_t> rho_j(const RemovalSet& rs, std::span<const std::uint8_t> w) {
    if (w.size() != rs.i_size)
        throw std::invalid_argument("rho_J: word length " + std::to_string(w.size()) +
                                    " != window size " + std::to_string(rs.i_size));
    std::vector<std::uint8_t> out;
    out.reserve(rs.kept.size());
    for (const std::uint64_t pos : rs.kept) out.push_back(w[pos - 1]);
    return out;
}

SigmaPerm sigma_perm(const RemovalSet& rs) {
    // Kept positions factor as j = p1^i1 p2^i2 m with i1, i2 <= k and m
    // coprime to p1 p2. Ordered by ascending m, the exponent class (i1, i2)
    // feeds target block (k-i1, k-i2); blocks concatenate row-major.
    std::unordered_map<std::uint64_t, std::uint32_t> kept_index;
    kept_index.reserve(rs.kept.size());
    for (std::uint32_t i = 0; i < rs.kept.size(); ++i) kept_index.emplace(rs.kept[i], i);

    SigmaPerm sigma;
    sigma.map.reserve(rs.kept.size());
    const std::uint32_t k = rs.level;
    for (std::uint32_t b1 = 0; b1 <= k; ++b1) {
        for (std::uint32_t b2 = 0; b2 <= k; ++b2) {
            const std::uint64_t q =
                checked_pow(rs.p1, k - b1) * checked_pow(rs.p2, k - b2);
            for (std::uint64_t m = 1; q * m <= rs.i_size; ++m) {
                if (m % rs.p1 == 0 || m % rs.p2 == 0) continue;
                sigma.map.push_back(kept_index.at(q * m));
            }
        }
    }
    return sigma;
}

std::vector<std::uint8_t> apply_perm(const SigmaPerm& sigma,
                                     std::span<const std::uint8_t> w) {
    if (w.size() != sigma.map.size())
        throw std::invalid_argument("permutation length mismatch");
    std::vector<std::uint8_t> out(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) out[t] = w[sigma.map[t]];
    return out;
}

bool lemma5_check(const DigitSeq& x, const RemovalSet& rs, std::uint64_t window_index) {
    validate(x);
    if (window_index < 1) throw std::invalid_argument("lemma5_check: window index is 1-based");
    const PrimeSet ps({rs.p1, rs.p2});
    const std::uint64_t factor =
        std::uint64_t(rs.p1 - 1) * (rs.p2 - 1) * checked_pow(rs.p1, rs.level) *
        checked_pow(rs.p2, rs.level);
    const std::uint64_t needed = checked_mul(factor, window_index);
    if (x.length() < needed)
        throw std::invalid_argument("lemma5_check: input needs " + std::to_string(needed) +
                                    " digits, has " + std::to_string(x.length()));

    // i-th window of the transform, computed in place
    const std::uint64_t w_lo = rs.i_size * (window_index - 1) + 1;
    std::vector<std::uint8_t> window(rs.i_size);
    for (std::uint64_t n = 0; n < rs.i_size; ++n)
        window[n] = x.digit_at(delta(ps, w_lo + n));

    const std::vector<std::uint8_t> lhs = apply_perm(sigma_perm(rs), rho_j(rs, window));

    std::vector<std::uint8_t> rhs;
    rhs.reserve(lhs.size());
    for (std::uint32_t i1 = 0; i1 <= rs.level; ++i1) {
        for (std::uint32_t i2 = 0; i2 <= rs.level; ++i2) {
            const std::uint64_t len = std::uint64_t(rs.p1 - 1) * (rs.p2 - 1) *
                                      checked_pow(rs.p1, i1) * checked_pow(rs.p2, i2);
            const std::uint64_t start = len * (window_index - 1) + 1;
            for (std::uint64_t t = 0; t < len; ++t)
                rhs.push_back(x.digit_at(start + t));
        }
    }
    return lhs == rhs;
}

namespace {

struct PositionTable {
    // per family entry: position scale, offset, word
    struct Entry {
        std::uint64_t scale;
        std::int64_t offset;
        const std::vector<std::uint8_t>* word;
    };
    std::vector<Entry> entries;
    std::uint64_t total_word_len = 0;
};

PositionTable build_table(const CondIIQuery& q, std::uint32_t p1, std::uint32_t p2) {
    const std::size_t dim = q.k + 1;
    if (q.words.size() != dim)
        throw std::invalid_argument("condII: the word family must have k+1 rows");
    PositionTable table;
    for (std::size_t i1 = 0; i1 < dim; ++i1) {
        if (q.words[i1].size() != dim)
            throw std::invalid_argument("condII: the word family must have k+1 columns");
        for (std::size_t i2 = 0; i2 < dim; ++i2) {
            PositionTable::Entry e;
            e.scale = std::uint64_t(p1 - 1) * (p2 - 1) *
                      checked_pow(p1, static_cast<std::uint32_t>(i1)) *
                      checked_pow(p2, static_cast<std::uint32_t>(i2));
            e.offset = 0;
            if (!q.offsets.empty()) {
                if (q.offsets.size() != dim || q.offsets[i1].size() != dim)
                    throw std::invalid_argument("condII: offsets must be a (k+1)x(k+1) family");
                e.offset = q.offsets[i1][i2];
            }
            e.word = &q.words[i1][i2];
            table.total_word_len += e.word->size();
            table.entries.push_back(e);
        }
    }
    return table;
}

}  // namespace

CondIIResult condii_estimate(const DigitSeq& x, const CondIIQuery& q,
                             std::uint32_t p1, std::uint32_t p2, std::uint64_t limit) {
    validate(x);
    if (p1 == p2 || !is_prime(p1) || !is_prime(p2))
        throw std::invalid_argument("condII: p1, p2 must be distinct primes");
    if (limit < 1) throw std::invalid_argument("condII: limit must be positive");
    if (q.words.empty()) throw std::invalid_argument("condII: empty word family");
    const PositionTable table = build_table(q, p1, p2);

    // Every position must fit at n = limit; smaller n only ever fail the
    // lower bound (negative offsets), which drops them from the denominator.
    for (const auto& e : table.entries) {
        const std::int64_t last = static_cast<std::int64_t>(e.scale * limit) + e.offset +
                                  static_cast<std::int64_t>(e.word->size()) - 1;
        if (last > static_cast<std::int64_t>(x.length()))
            throw std::invalid_argument(
                "condII: sequence has " + std::to_string(x.length()) +
                " digits but n=" + std::to_string(limit) + " reads up to position " +
                std::to_string(last));
    }

    const std::uint64_t kChunk = 1 << 14;
    const std::uint64_t n_chunks = (limit + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> match_part(n_chunks, 0), valid_part(n_chunks, 0);
    const std::uint8_t* digits = x.digits.data();

#pragma omp parallel for schedule(static)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        std::uint64_t matches = 0, valid = 0;
        const std::uint64_t lo = c * kChunk + 1;
        const std::uint64_t hi = std::min(limit, (c + 1) * kChunk);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            bool ok_positions = true;
            bool ok_words = true;
            for (const auto& e : table.entries) {
                const std::int64_t pos = static_cast<std::int64_t>(e.scale * n) + e.offset;
                if (pos < 1) {
                    ok_positions = false;
                    break;
                }
                if (ok_words) {
                    const std::uint8_t* at = digits + (pos - 1);
                    for (std::size_t t = 0; t < e.word->size(); ++t) {
                        if (at[t] != (*e.word)[t]) {
                            ok_words = false;
                            break;
                        }
                    }
                }
            }
            if (!ok_positions) continue;
            ++valid;
            if (ok_words) ++matches;
        }
        match_part[c] = matches;
        valid_part[c] = valid;
    }

    CondIIResult res;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        res.matches += match_part[c];
        res.n_effective += valid_part[c];
    }
    res.target = std::pow(static_cast<double>(x.base),
                          -static_cast<double>(table.total_word_len));
    if (res.n_effective > 0)
        res.frequency = static_cast<double>(res.matches) /
                        static_cast<double>(res.n_effective);
    res.stderr_est = res.n_effective > 0
                         ? std::sqrt(res.target * (1.0 - res.target) /
                                     static_cast<double>(res.n_effective))
                         : 0.0;
    return res;
}

std::uint64_t double_transform_witness(const DigitSeq& t, std::uint64_t limit) {
    validate(t);
    if (limit < 1) throw std::invalid_argument("witness: limit must be positive");
    const PrimeSet two({2});
    if (!is_toeplitz(two, t).empty())
        throw std::invalid_argument("witness: input is not a Toeplitz prefix for P={2}");
    const std::uint64_t d_len = 4 * limit - 1;
    const std::uint64_t needed = count_l(two, d_len);
    if (t.length() < needed)
        throw std::invalid_argument("witness: input needs " + std::to_string(needed) +
                                    " digits for limit " + std::to_string(limit));
    const DigitSeq d = toeplitz_transform(two, t, d_len);
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (d.digit_at(4 * n - 2) != d.digit_at(4 * n - 1)) ++mismatches;
    return mismatches;
}

}  // namespace normlab
