#include "mfk/weights.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace mfk;

TEST_CASE("chi series of the E12 system") {
    WeightSystem w(6, 14, 21, 42);
    ChiResult r = chi_series(w);
    REQUIRE(r.verdict == ChiVerdict::Regular);
    CHECK(r.data->mu == 12);
    CHECK(r.data->epsilon == -1);
    CHECK(r.data->genus_a0 == 0);
    // mu agrees with (h-a)(h-b)(h-c)/abc
    CHECK(r.data->mu == 36 * 28 * 21 / (6 * 14 * 21));
}

TEST_CASE("elliptic sanity input") {
    ChiResult r = chi_series(WeightSystem(1, 1, 1, 3));
    REQUIRE(r.verdict == ChiVerdict::Regular);
    CHECK(r.data->epsilon == 0);
}

TEST_CASE("invalid weight systems are rejected at construction") {
    CHECK_THROWS_AS(WeightSystem(2, 2, 2, 4), MfkError);
    CHECK_THROWS_AS(WeightSystem(1, 1, 5, 4), MfkError);
    CHECK_THROWS_AS(WeightSystem(0, 1, 1, 3), MfkError);
}

TEST_CASE("(1,1,1;4) has epsilon -1 but positive genus") {
    ChiResult r = chi_series(WeightSystem(1, 1, 1, 4));
    REQUIRE(r.verdict == ChiVerdict::Regular);
    CHECK(r.data->epsilon == -1);
    CHECK(r.data->genus_a0 == 3);  // excluded from the genus-zero list
    CHECK(r.data->mu == 27);
}

TEST_CASE("exponents come with multiplicity") {
    ChiResult r = chi_series(WeightSystem(2, 2, 5, 10));
    REQUIRE(r.verdict == ChiVerdict::Regular);
    CHECK(r.data->mu == 16);
    long long count5 = std::count(r.data->exponents.begin(), r.data->exponents.end(), 5LL);
    CHECK(count5 == 4);
}

TEST_CASE("signature examples") {
    CHECK(signature(WeightSystem(6, 14, 21, 42)).alphas == std::vector<long long>{2, 3, 7});
    CHECK(signature(WeightSystem(2, 6, 9, 18)).alphas == std::vector<long long>{2, 2, 2, 3});
    CHECK(signature(WeightSystem(2, 2, 5, 10)).alphas == std::vector<long long>{2, 2, 2, 2, 2});
    // the pair-count oracle behind the (2,6,9;18) entry
    CHECK(pair_count(2, 6, 18) == 4);
    CHECK(pair_count(6, 9, 18) == 2);
    CHECK(pair_count(2, 9, 18) == 2);
}

TEST_CASE("dual rank") {
    {
        Signature s = signature(WeightSystem(6, 14, 21, 42));
        CHECK(dual_rank(s, -1) == 12);
    }
    {
        Signature s = signature(WeightSystem(2, 2, 5, 10));
        CHECK(dual_rank(s, -1) == 8);
    }
    CHECK(dual_rank(Signature{{}, 1}, 0) == 0);  // degenerate formula case
}

TEST_CASE("enumeration finds exactly the twenty-two systems") {
    auto all = enumerate_eps_minus1_genus0(100);
    REQUIRE(all.size() == 22);
    // frozen header table: (a,b,c;h) with signature
    const std::vector<std::pair<std::array<long long, 4>, std::vector<long long>>> expected = {
        {{2, 2, 3, 8}, {2, 2, 2, 2, 3}},   {{2, 3, 3, 9}, {2, 3, 3, 3}},
        {{2, 2, 5, 10}, {2, 2, 2, 2, 2}},  {{2, 3, 4, 10}, {2, 2, 3, 4}},
        {{2, 3, 6, 12}, {2, 2, 3, 3}},     {{2, 4, 5, 12}, {2, 2, 2, 5}},
        {{3, 4, 4, 12}, {4, 4, 4}},        {{3, 4, 5, 13}, {3, 4, 5}},
        {{2, 4, 7, 14}, {2, 2, 2, 4}},     {{3, 5, 6, 15}, {3, 3, 6}},
        {{3, 4, 8, 16}, {3, 4, 4}},        {{4, 5, 6, 16}, {2, 5, 6}},
        {{2, 6, 9, 18}, {2, 2, 2, 3}},     {{3, 5, 9, 18}, {3, 3, 5}},
        {{4, 6, 7, 18}, {2, 4, 7}},        {{4, 5, 10, 20}, {2, 5, 5}},
        {{4, 6, 11, 22}, {2, 4, 6}},       {{3, 8, 12, 24}, {3, 3, 4}},
        {{6, 8, 9, 24}, {2, 3, 9}},        {{4, 10, 15, 30}, {2, 4, 5}},
        {{6, 8, 15, 30}, {2, 3, 8}},       {{6, 14, 21, 42}, {2, 3, 7}},
    };
    REQUIRE(expected.size() == 22);
    for (size_t k = 0; k < 22; ++k) {
        const auto& [wref, sig] = expected[k];
        const auto& got = all[k];
        CHECK(std::array<long long, 4>{got.w.a, got.w.b, got.w.c, got.w.h} == wref);
        CHECK(got.sig.alphas == sig);
    }
    bool has345 = false;
    for (const auto& s : all) has345 |= (s.w.a == 3 && s.w.b == 4 && s.w.c == 5 && s.w.h == 13);
    CHECK(has345);
}

TEST_CASE("invariants of the enumerated systems") {
    for (const auto& s : enumerate_eps_minus1_genus0(100)) {
        // mu from expansion equals the closed formula
        Int mu_formula = Int(s.w.h - s.w.a) * (s.w.h - s.w.b) * (s.w.h - s.w.c) / (Int(s.w.a) * s.w.b * s.w.c);
        CHECK(Int(s.exponents.mu) == mu_formula);
        CHECK(s.exponents.epsilon == s.w.a + s.w.b + s.w.c - s.w.h);
        // exponent multiset invariant under m -> h - m (from chi_W(1/T) = T^{-h} chi_W(T))
        std::multiset<long long> ms(s.exponents.exponents.begin(), s.exponents.exponents.end());
        std::multiset<long long> reflected;
        for (long long m : ms) reflected.insert(s.w.h - m);
        CHECK(ms == reflected);
        // nu = 3 + sum(alpha - 1)
        long long arms = 0;
        for (long long a : s.sig.alphas) arms += a - 1;
        CHECK(s.nu == arms + 3);
    }
}
