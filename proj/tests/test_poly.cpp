#include "mfk/poly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace mfk;

TEST_CASE("euler degree of weighted homogeneous polynomials") {
    WeightSystem e12(6, 14, 21, 42);
    // degree 2 in the paper's units corresponds to numerator 2h
    CHECK(poly("x^7+y^3+z^2").euler_degree_num(e12) == 2 * 42);
    CHECK(poly("1").euler_degree_num(e12) == 0);
    CHECK(poly("x*y").euler_degree_num(e12) == 40);
    CHECK_THROWS_AS(poly("x+y").euler_degree_num(e12), MfkError);
    CHECK_THROWS_AS(Polynomial().euler_degree_num(e12), MfkError);
    // parameters carry degree zero
    CHECK(poly("l1*x^7+l2^2*y^3").euler_degree_num(e12) == 84);
}

TEST_CASE("degree is additive under multiplication") {
    WeightSystem w(3, 4, 5, 13);
    std::mt19937 rng(7);
    auto random_monomial = [&]() {
        Polynomial p(Rat(1 + static_cast<long long>(rng() % 5)));
        for (int v = 0; v < 3; ++v) p *= Polynomial::variable(v, static_cast<int>(rng() % 4));
        return p;
    };
    for (int k = 0; k < 50; ++k) {
        Polynomial p = random_monomial(), q = random_monomial();
        CHECK((p * q).euler_degree_num(w) == p.euler_degree_num(w) + q.euler_degree_num(w));
    }
}

TEST_CASE("graded piece basis") {
    WeightSystem e12(6, 14, 21, 42);
    auto basis12 = graded_piece_basis(12, e12);  // monomial weight 6
    REQUIRE(basis12.size() == 1);
    CHECK(basis12[0] == poly("x"));
    auto basis0 = graded_piece_basis(0, e12);
    REQUIRE(basis0.size() == 1);
    CHECK(basis0[0] == poly("1"));
    CHECK(graded_piece_basis(13, e12).empty());  // odd numerator
    CHECK(graded_piece_basis(-4, e12).empty());

    // weight-42 window cross-checked against an exhaustive scan
    auto basis84 = graded_piece_basis(84, e12);
    long long count = 0;
    for (long long i = 0; 6 * i <= 42; ++i)
        for (long long j = 0; 6 * i + 14 * j <= 42; ++j)
            for (long long k = 0; 6 * i + 14 * j + 21 * k <= 42; ++k)
                if (6 * i + 14 * j + 21 * k == 42) ++count;
    CHECK(static_cast<long long>(basis84.size()) == count);
}

TEST_CASE("graded piece dimensions match the generating function") {
    WeightSystem w(2, 2, 5, 10);
    // coefficients of 1/((1-T^2)(1-T^2)(1-T^5)) on a window
    const int N = 40;
    std::vector<long long> series(N + 1, 0);
    series[0] = 1;
    for (long long a : {2LL, 2LL, 5LL}) {
        for (int k = static_cast<int>(a); k <= N; ++k) series[static_cast<size_t>(k)] += series[static_cast<size_t>(k - a)];
    }
    for (int weight = 0; weight <= N; ++weight)
        CHECK(static_cast<long long>(graded_piece_basis(2 * weight, w).size()) == series[static_cast<size_t>(weight)]);
}

TEST_CASE("specialization") {
    Polynomial p = poly("y*(y-x^3)*(y-l1*x^3)+z^2");
    CHECK(p.specialize({{"l1", Rat(2)}}) == poly("y*(y-x^3)*(y-2*x^3)+z^2"));
    Polynomial q = poly("x^7+y^3+z^2");
    CHECK(q.specialize({}) == q);
    CHECK(poly("(l1-l2)*x").specialize({{"l1", Rat(2)}, {"l2", Rat(2)}}).is_zero());
    CHECK_THROWS_AS(p.specialize({}), MfkError);
    CHECK_THROWS_AS(p.specialize({{"l2", Rat(1)}}), MfkError);
}

TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937 rng(2024);
    auto random_poly = [&]() {
        Polynomial p;
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            Polynomial m(Rat(static_cast<long long>(rng() % 7) - 3));
            for (int v = 0; v < 5; ++v)
                if (rng() % 2) m *= Polynomial::variable(v, static_cast<int>(rng() % 3));
            p += m;
        }
        return p;
    };
    for (int k = 0; k < 60; ++k) {
        Polynomial a = random_poly(), b = random_poly(), c = random_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("text grammar round trip") {
    for (const char* s : {"x^7+y^3+z^2", "3*x^2*y-7/2*z", "-x+1", "0", "l1*x-l2*y", "x*y*z",
                          "2*x^3-y^2+5", "-1/3*z^2"}) {
        Polynomial p = poly(s);
        CHECK(poly(p.to_string()) == p);
    }
    // canonical printing is a fixed point
    std::mt19937 rng(5);
    for (int k = 0; k < 40; ++k) {
        Polynomial p;
        for (int t = 0; t < 4; ++t) {
            Polynomial m(Rat(static_cast<long long>(rng() % 9) - 4, 1 + static_cast<long long>(rng() % 3)));
            for (int v = 0; v < 5; ++v)
                if (rng() % 3 == 0) m *= Polynomial::variable(v, 1 + static_cast<int>(rng() % 3));
            p += m;
        }
        std::string once = p.to_string();
        CHECK(poly(once).to_string() == once);
    }
    CHECK_THROWS_AS(poly("x^"), MfkError);
    CHECK_THROWS_AS(poly("w+1"), MfkError);
    CHECK_THROWS_AS(poly("(x+y"), MfkError);
    CHECK_THROWS_AS(poly("3/0"), MfkError);
}

TEST_CASE("parenthesized input sugar") {
    CHECK(poly("y*(y-x)*(y+x)") == poly("y^3-x^2*y"));
    CHECK(poly("(x+y)^2") == poly("x^2+2*x*y+y^2"));
    CHECK(poly("-(x-y)") == poly("y-x"));
    CHECK(poly("x(x+y)") == poly("x^2+x*y"));  // implicit product
}

TEST_CASE("degree-zero units i and u") {
    // i^2 = -1
    CHECK(poly("i*i") == poly("-1"));
    CHECK(poly("(z+i*y^2)*(z-i*y^2)") == poly("z^2+y^4"));
    // u^2 = -l1
    CHECK(poly("u^2") == poly("-l1"));
    CHECK(poly("(z+u*x^3)*(z-u*x^3)") == poly("z^2+l1*x^6"));
    WeightSystem w(2, 3, 6, 12);
    CHECK(poly("u*x^3").euler_degree_num(w) == 12);
    // specializing u requires consistency with l1
    Polynomial p = poly("u*x");
    CHECK(p.specialize({{"u", Rat(2)}, {"l1", Rat(-4)}}) == poly("2*x"));
    CHECK_THROWS_AS(p.specialize({{"u", Rat(2)}, {"l1", Rat(4)}}), MfkError);
    CHECK_THROWS_AS(p.specialize({{"l1", Rat(-4)}}), MfkError);
}
