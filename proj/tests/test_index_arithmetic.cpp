#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normlab/index_arithmetic.hpp"
#include "normlab/reference.hpp"
#include "oracles.hpp"

using namespace normlab;

TEST_CASE("prime set validation") {
    CHECK_THROWS_AS(PrimeSet({4}), std::invalid_argument);
    CHECK_THROWS_AS(PrimeSet({3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PrimeSet({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PrimeSet({}), std::invalid_argument);
    CHECK_THROWS_AS(PrimeSet({2, 3, 5, 7, 11, 13, 17, 19, 23}), std::invalid_argument);
    CHECK_NOTHROW(PrimeSet({2, 3, 101}));
}

TEST_CASE("decompose worked examples") {
    const PrimeSet p2({2});
    auto d = decompose(p2, 12);
    CHECK(d.exponents == std::vector<std::uint32_t>{2});
    CHECK(d.l_part == 3);
    CHECK(d.rank == 2);

    const PrimeSet p23({2, 3});
    d = decompose(p23, 1);
    CHECK(d.exponents == std::vector<std::uint32_t>{0, 0});
    CHECK(d.l_part == 1);
    CHECK(d.rank == 1);

    d = decompose(p23, 90);
    CHECK(d.exponents == std::vector<std::uint32_t>{1, 2});
    CHECK(d.l_part == 5);
    CHECK(d.rank == 2);

    CHECK_THROWS_AS(decompose(p2, 0), std::invalid_argument);
}

TEST_CASE("delta worked examples") {
    const PrimeSet p2({2});
    CHECK(delta(p2, 1) == 1);
    CHECK(delta(p2, 6) == 2);
    const PrimeSet p23({2, 3});
    CHECK(delta(p23, 90) == 2);
}

TEST_CASE("unrank worked examples") {
    const PrimeSet p2({2});
    CHECK(unrank_l(p2, 5) == 9);  // j_k = 2k-1
    const PrimeSet p23({2, 3});
    CHECK(unrank_l(p23, 1) == 1);
    CHECK(unrank_l(p23, 3) == 7);  // L = 1, 5, 7, 11, ...
    CHECK_THROWS_AS(unrank_l(p2, 0), std::invalid_argument);
    CHECK_THROWS_AS(unrank_l(p2, std::uint64_t{1} << 63), std::overflow_error);
}

TEST_CASE("equivalence") {
    const PrimeSet p2({2});
    CHECK(equivalent(p2, 3, 12));
    CHECK(equivalent(p2, 7, 7));
    const PrimeSet p23({2, 3});
    // brute force: 15 = 3*5 has coprime part 5, same as 5 itself
    CHECK(oracle::trial_decompose(p23, 5).l_part == oracle::trial_decompose(p23, 15).l_part);
    CHECK(equivalent(p23, 5, 15));
    CHECK_FALSE(equivalent(p23, 5, 7));
}

TEST_CASE("enumerate_k worked examples and oracle") {
    const PrimeSet p2({2});
    CHECK(enumerate_k(p2, 10) == std::vector<std::uint64_t>{1, 2, 4, 8});
    const PrimeSet p23({2, 3});
    CHECK(enumerate_k(p23, 20) ==
          std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18});
    const PrimeSet p35({3, 5});
    CHECK(enumerate_k(p35, 1) == std::vector<std::uint64_t>{1});

    for (const auto& ps : {p2, p23, p35})
        CHECK(enumerate_k(ps, 5000) == oracle::k_by_filter(ps, 5000));
}

TEST_CASE("decomposition round trip against the sieve oracle") {
    const std::uint64_t limit = 20000;
    for (const PrimeSet& ps :
         {PrimeSet({2}), PrimeSet({2, 3}), PrimeSet({3, 5}), PrimeSet({2, 3, 5, 7})}) {
        const oracle::CoprimeSieve sieve(ps, limit);
        for (std::uint64_t n = 1; n <= limit; ++n) {
            const Decomposition d = decompose(ps, n);
            std::uint64_t product = d.l_part;
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::uint32_t e = 0; e < d.exponents[i]; ++e) product *= ps[i];
            REQUIRE(product == n);
            REQUIRE(d.rank == sieve.rank_of[d.l_part]);
            REQUIRE(unrank_l(ps, d.rank) == d.l_part);
            REQUIRE(delta(ps, n) == d.rank);
        }
        // unrank agrees with the sieve list
        for (std::uint64_t k = 1; k <= sieve.l_members.size(); ++k)
            REQUIRE(unrank_l(ps, k) == sieve.l_members[k - 1]);
    }
}

TEST_CASE("count_l matches the sieve") {
    const PrimeSet ps({2, 5, 11});
    const oracle::CoprimeSieve sieve(ps, 5000);
    for (std::uint64_t x = 1; x <= 5000; ++x) REQUIRE(count_l(ps, x) == sieve.rank_of[x]);
}

TEST_CASE("gap scan for powers of two") {
    const PrimeSet p2({2});
    const GapReport rep = gap_scan(p2, 100);
    // every pair is (n, 2n): gap exceeds 2 sqrt(n) strictly iff n > 4
    CHECK(rep.empirical_n0 == 4);
    CHECK(rep.min_ratio == doctest::Approx(1.0));  // pair (1, 2)
    CHECK(rep.min_pair_n == 1);

    const GapReport floored = gap_scan(p2, 100, 5);
    CHECK(floored.min_ratio > 2.0);
}

TEST_CASE("gap scan boundary at limit 4") {
    const PrimeSet p2({2});
    const GapReport rep = gap_scan(p2, 4);
    CHECK(rep.pair_count == 2);  // (1,2) and (2,4)
    CHECK_THROWS_AS(gap_scan(p2, 3), std::invalid_argument);
}

TEST_CASE("gap scan matches serial reference") {
    for (const PrimeSet& ps : {PrimeSet({2, 3}), PrimeSet({3, 5})}) {
        const GapReport par = gap_scan(ps, 100000, 100);
        const GapReport ser = reference::gap_scan(ps, 100000, 100);
        CHECK(par.pair_count == ser.pair_count);
        CHECK(par.empirical_n0 == ser.empirical_n0);
        CHECK(par.min_ratio == ser.min_ratio);
        CHECK(par.min_pair_n == ser.min_pair_n);
        CHECK(par.min_pair_next == ser.min_pair_next);
    }
}

TEST_CASE("near-miss powers 3^5 and 2^8 drive the {2,3} scan-range n0") {
    const PrimeSet ps({2, 3});
    const GapReport rep = gap_scan(ps, 20000);
    // 1215 = 5*3^5 and 1280 = 5*2^8 sit 65 apart, inside 2*sqrt(1215) ~ 69.7
    CHECK(rep.empirical_n0 == 1215);
    CHECK(equivalent(ps, 1215, 1280));
    // the underlying K-pair: gap 13 below 2*sqrt(243) ~ 31.2
    CHECK(equivalent(ps, 243, 256));
}

TEST_CASE("delta values are pairwise distinct within gap windows") {
    const PrimeSet ps({2, 3});
    const GapReport rep = gap_scan(ps, 20000);
    for (std::uint64_t n = rep.empirical_n0 + 1; n <= 10000; ++n) {
        const std::uint64_t w = static_cast<std::uint64_t>(2.0 * std::sqrt(double(n)));
        std::vector<std::uint64_t> keys;
        keys.reserve(w + 1);
        for (std::uint64_t i = n; i <= n + w; ++i) keys.push_back(delta(ps, i));
        std::sort(keys.begin(), keys.end());
        REQUIRE(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
    }
}
