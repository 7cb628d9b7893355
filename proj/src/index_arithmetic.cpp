#include "normlab/index_arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "normlab/checked.hpp"

namespace normlab {

std::uint64_t count_l(const PrimeSet& ps, std::uint64_t x) {
    const auto primes = ps.primes();
    const std::size_t r = primes.size();
    std::int64_t total = 0;
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        std::uint64_t prod = 1;
        bool overflow = false;
        for (std::size_t i = 0; i < r; ++i) {
            if (mask & (1u << i)) {
                if (prod > x / primes[i]) {  // term would floor to zero anyway
                    overflow = true;
                    break;
                }
                prod *= primes[i];
            }
        }
        if (overflow) continue;
        const std::int64_t term = static_cast<std::int64_t>(x / prod);
        total += (__builtin_popcount(mask) % 2 == 0) ? term : -term;
    }
    return static_cast<std::uint64_t>(total);
}

Decomposition decompose(const PrimeSet& ps, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("decompose: n must be positive");
    Decomposition d;
    d.n = n;
    d.exponents.assign(ps.size(), 0);
    std::uint64_t rest = n;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        while (rest % ps[i] == 0) {
            rest /= ps[i];
            ++d.exponents[i];
        }
    }
    d.l_part = rest;
    d.rank = count_l(ps, rest);
    return d;
}

std::uint64_t delta(const PrimeSet& ps, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("delta: n must be positive");
    std::uint64_t rest = n;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        while (rest % ps[i] == 0) rest /= ps[i];
    }
    return count_l(ps, rest);
}

std::uint64_t unrank_l(const PrimeSet& ps, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("unrank_l: k must be positive");
    // count_l grows linearly with slope prod (1 - 1/p) > 0, so doubling
    // terminates quickly; overflow of the bracket is a genuine range error.
    std::uint64_t hi = 1;
    while (count_l(ps, hi) < k) {
        if (hi > std::numeric_limits<std::uint64_t>::max() / 2)
            throw std::overflow_error("unrank_l: j_k exceeds 64 bits");
        hi *= 2;
    }
    std::uint64_t lo = hi / 2;  // count_l(lo) < k <= count_l(hi)
    while (lo + 1 < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (count_l(ps, mid) < k)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

bool equivalent(const PrimeSet& ps, std::uint64_t n, std::uint64_t n2) {
    return decompose(ps, n).l_part == decompose(ps, n2).l_part;
}

std::vector<std::uint64_t> enumerate_k(const PrimeSet& ps, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("enumerate_k: bound must be positive");
    // Product-lattice merge: grow the sorted list by multiplying known
    // elements by each prime, smallest candidate first.
    using Entry = std::uint64_t;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push(1);
    std::vector<std::uint64_t> out;
    while (!heap.empty()) {
        const std::uint64_t v = heap.top();
        heap.pop();
        if (!out.empty() && out.back() == v) continue;  // dedupe merged paths
        out.push_back(v);
        for (auto p : ps.primes()) {
            if (v <= bound / p) heap.push(v * p);
        }
    }
    return out;
}

namespace {

struct GapAccum {
    double min_ratio = std::numeric_limits<double>::infinity();
    std::uint64_t min_pair_n = 0, min_pair_next = 0;
    std::uint64_t worst_violation_n = 0;  // max n over pairs with (n'-n)^2 <= 4n
    std::uint64_t pair_count = 0;

    void absorb(const GapAccum& o) {
        pair_count += o.pair_count;
        worst_violation_n = std::max(worst_violation_n, o.worst_violation_n);
        if (o.min_ratio < min_ratio ||
            (o.min_ratio == min_ratio && o.min_pair_n < min_pair_n)) {
            min_ratio = o.min_ratio;
            min_pair_n = o.min_pair_n;
            min_pair_next = o.min_pair_next;
        }
    }
};

}  // namespace

GapReport gap_scan(const PrimeSet& ps, std::uint64_t limit, std::uint64_t floor) {
    if (limit < 4) throw std::invalid_argument("gap_scan: limit must be >= 4");
    const std::vector<std::uint64_t> k_elems = enumerate_k(ps, limit);

    // One parallel chunk per range of class representatives l; minima and
    // maxima merge associatively so the partition is free to vary.
    const std::uint64_t kChunk = 1 << 14;
    const std::uint64_t n_chunks = (limit + kChunk - 1) / kChunk;
    std::vector<GapAccum> partial(n_chunks);

#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        GapAccum acc;
        const std::uint64_t lo = c * kChunk + 1;
        const std::uint64_t hi = std::min(limit, (c + 1) * kChunk);
        for (std::uint64_t l = lo; l <= hi; ++l) {
            bool coprime = true;
            for (auto p : ps.primes()) {
                if (l % p == 0) {
                    coprime = false;
                    break;
                }
            }
            if (!coprime) continue;
            std::uint64_t prev = 0;
            for (const std::uint64_t k : k_elems) {
                if (k > limit / l) break;
                const std::uint64_t member = k * l;
                if (prev != 0) {
                    const std::uint64_t gap = member - prev;
                    ++acc.pair_count;
                    // strict Lemma-1 predicate, exact in integers
                    if (static_cast<unsigned __int128>(gap) * gap <=
                        4 * static_cast<unsigned __int128>(prev))
                        acc.worst_violation_n = std::max(acc.worst_violation_n, prev);
                    if (prev >= floor) {
                        const double ratio =
                            static_cast<double>(gap) / std::sqrt(static_cast<double>(prev));
                        if (ratio < acc.min_ratio ||
                            (ratio == acc.min_ratio && prev < acc.min_pair_n)) {
                            acc.min_ratio = ratio;
                            acc.min_pair_n = prev;
                            acc.min_pair_next = member;
                        }
                    }
                }
                prev = member;
            }
        }
        partial[c] = acc;
    }

    GapAccum total;
    for (const auto& acc : partial) total.absorb(acc);

    GapReport rep;
    rep.limit = limit;
    rep.floor = floor;
    rep.pair_count = total.pair_count;
    rep.min_ratio = total.min_ratio;
    rep.min_pair_n = total.min_pair_n;
    rep.min_pair_next = total.min_pair_next;
    rep.empirical_n0 = total.worst_violation_n;
    return rep;
}

}  // namespace normlab
