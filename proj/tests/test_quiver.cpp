#include "mfk/quiver.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mfk;

namespace {
int index_of(const QuiverSpec& q, const std::string& v) {
    for (size_t i = 0; i < q.vertices.size(); ++i)
        if (q.vertices[i] == v) return static_cast<int>(i);
    FAIL("vertex not found: " << v);
    return -1;
}
}  // namespace

TEST_CASE("hub entries of the three quiver variants") {
    Signature sig{{2, 3, 7}, 0};
    auto W = quiver_variant(sig, QuiverVariant::W);
    auto T = quiver_variant(sig, QuiverVariant::T);
    auto P = quiver_variant(sig, QuiverVariant::Prime);

    int vb = index_of(W, "v1bar"), v1 = index_of(W, "v1");
    CHECK(W.C.at(vb, v1) == 2);
    CHECK(W.chi.at(vb, v1) == -2);
    CHECK(W.C.at(index_of(W, "v_1_2"), v1) == -1);
    CHECK(W.C.at(index_of(W, "v_1_2"), vb) == -1);
    CHECK(W.chi.at(index_of(W, "v_1_2"), v1) == -1);

    vb = index_of(T, "v1bar");
    v1 = index_of(T, "v1");
    CHECK(T.C.at(vb, v1) == -2);
    CHECK(T.C.at(index_of(T, "v_1_2"), v1) == 1);
    CHECK(T.chi.at(vb, v1) == 2);
    CHECK(T.chi.at(index_of(T, "v_1_2"), v1) == 1);

    vb = index_of(P, "v1bar");
    v1 = index_of(P, "v1");
    CHECK(P.C.at(vb, index_of(P, "v_1_2")) == -1);
    CHECK(P.chi.at(vb, index_of(P, "v_1_2")) == 1);
    CHECK(P.chi.at(index_of(P, "v_1_2"), v1) == 1);
    CHECK(P.chi.at(vb, v1) == 3 - 2);  // r - 2
}

TEST_CASE("arrow counts") {
    Signature sig{{2, 3, 7}, 0};
    auto T = quiver_variant(sig, QuiverVariant::T);
    CHECK(T.vertices.size() == 12);  // nu_W of the E12 case
    long long dotted = 0;
    for (const auto& a : T.arrows) dotted += a.d == -1 ? 1 : 0;
    CHECK(dotted == 3);  // one relation per arm
    auto P = quiver_variant(sig, QuiverVariant::Prime);
    dotted = 0;
    for (const auto& a : P.arrows) dotted += a.d == -1 ? 1 : 0;
    CHECK(dotted == 2);  // the two relations of the prime quiver
}

TEST_CASE("chi of the T and prime variants is non-negative") {
    for (const auto& s : enumerate_eps_minus1_genus0(100)) {
        for (auto variant : {QuiverVariant::T, QuiverVariant::Prime}) {
            auto q = quiver_variant(s.sig, variant);
            for (const Int& v : q.chi.a) CHECK(v >= 0);
        }
        auto qw = quiver_variant(s.sig, QuiverVariant::W);
        CHECK(qw.C * qw.chi == ZMat::identity(qw.C.n));
    }
}

TEST_CASE("closed-form Euler matrix matches the T-variant") {
    for (const auto& s : enumerate_eps_minus1_genus0(100))
        CHECK(chi_from_hom_formulas(s.sig) == quiver_variant(s.sig, QuiverVariant::T).chi);
}

TEST_CASE("Coxeter transformation has order h with inertia (nu-2, 0, 2)") {
    for (const auto& s : enumerate_eps_minus1_genus0(100)) {
        for (auto variant : {QuiverVariant::W, QuiverVariant::T, QuiverVariant::Prime}) {
            CoxeterData cox = coxeter(quiver_variant(s.sig, variant).C, 2 * s.w.h + 2);
            CHECK(cox.order == s.w.h);
            // det = +-1: constant coefficient of the characteristic polynomial
            Int det = cox.char_polynomial.at(0);
            CHECK((det == 1 || det == -1));
            // c^h = Id is implied by order | h
            CHECK(s.w.h % cox.order == 0);
            CHECK(cox.n_zero == 0);
            CHECK(std::min(cox.n_pos, cox.n_neg) == 2);
            CHECK(std::max(cox.n_pos, cox.n_neg) == s.nu - 2);
            // every cyclotomic factor divides x^h - 1
            for (const auto& [d, mult] : cox.cyclotomic_factors) CHECK(s.w.h % d == 0);
        }
    }
}

TEST_CASE("K0 form is Coxeter invariant and the AR identity holds") {
    for (const auto& s : enumerate_eps_minus1_genus0(100)) {
        auto q = quiver_variant(s.sig, QuiverVariant::W);
        CoxeterData cox = coxeter(q.C, 2 * s.w.h + 2);
        const ZMat& co = cox.matrix;
        int n = q.C.n;
        // chi(c x, c y) = chi(x, y)
        CHECK(co.transpose() * q.chi * co == q.chi);
        // per-vertex AR-triangle identity:
        // [tau E_i] + [E_i] = sum_{j != i} (-C_{ij} [tau E_j] - C_{ji} [E_j])
        // with [tau E_j] = column j of the Coxeter matrix
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Int lhs = co.at(k, i) + (k == i ? 1 : 0);
                Int rhs = 0;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    rhs += -q.C.at(i, j) * co.at(k, j) - q.C.at(j, i) * (k == j ? 1 : 0);
                }
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("eigen-angles of the (2,3,7) quiver are the E12 exponents") {
    ClassifiedSystem e12;
    for (const auto& s : enumerate_eps_minus1_genus0(100))
        if (s.w.h == 42) e12 = s;
    REQUIRE(e12.w.h == 42);
    CoxeterData cox = coxeter(quiver_variant(e12.sig, QuiverVariant::W).C, 100);
    CHECK(cox.eigen_angles == exponent_angles(e12));
}

TEST_CASE("strange duality scan") {
    auto systems = enumerate_eps_minus1_genus0(100);
    DualityPairing pairing = duality_scan(systems);
    CHECK(pairing.involution);
    CHECK(pairing.issues.empty());
    REQUIRE(pairing.pairs.size() == 14);
    // frozen classical pairing (Arnold's strange duality)
    std::map<std::string, std::string> expected = {
        {"w-6-14-21-42", "w-6-14-21-42"}, {"w-4-10-15-30", "w-6-8-15-30"},
        {"w-6-8-15-30", "w-4-10-15-30"},  {"w-3-8-12-24", "w-6-8-9-24"},
        {"w-6-8-9-24", "w-3-8-12-24"},    {"w-4-6-11-22", "w-4-6-11-22"},
        {"w-3-5-9-18", "w-4-6-7-18"},     {"w-4-6-7-18", "w-3-5-9-18"},
        {"w-3-5-6-15", "w-3-5-6-15"},     {"w-4-5-10-20", "w-4-5-10-20"},
        {"w-3-4-8-16", "w-4-5-6-16"},     {"w-4-5-6-16", "w-3-4-8-16"},
        {"w-3-4-5-13", "w-3-4-5-13"},     {"w-3-4-4-12", "w-3-4-4-12"},
    };
    for (const auto& [a, b] : pairing.pairs) {
        REQUIRE(expected.count(a) == 1);
        CHECK(expected.at(a) == b);
    }
    // the eight r >= 4 systems are excluded
    long long r3 = 0;
    for (const auto& s : systems) r3 += s.sig.r() == 3 ? 1 : 0;
    CHECK(r3 == 14);
}
