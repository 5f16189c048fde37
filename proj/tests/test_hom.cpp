#include "mfk/ar.hpp"
#include "mfk/corpus.hpp"
#include "mfk/hom.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mfk;

namespace {
const std::map<std::string, Rat> kParams{{"l1", Rat(2)}, {"l2", Rat(3)}};

GradedMF obj(const std::string& case_id, const std::string& name) {
    auto c = load_case_file(default_data_dir() / "cases" / (case_id + ".json"));
    auto b = build_object(c, name, true);
    REQUIRE(b.has_matrices);
    REQUIRE(b.problems.empty());
    return specialize_mf(b.mf, kParams);
}
}  // namespace

TEST_CASE("hom dimensions of the seeds in the CI case") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    CHECK(hom_dim(V0, V0) == 1);
    CHECK(hom_dim(V0, translate_T(V0)) == 0);
    GradedMF V12 = obj("w-2-2-5-10", "V_1_2");
    CHECK(hom_dim(V12, V12) == 1);
}

TEST_CASE("parametric input is rejected") {
    auto c = load_case_file(default_data_dir() / "cases" / "w-2-2-5-10.json");
    auto b = build_object(c, "V0", true);
    CHECK_THROWS_AS(hom_dim(b.mf, b.mf), MfkError);
}

TEST_CASE("composition with identity is homotopic to itself") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    GradedMF SV0 = serre(V0);
    HomProblem H(V0, SV0);
    REQUIRE(H.dim() == 1);
    Morphism g = H.basis()[0];
    Morphism gid = compose(g, Morphism::identity(V0));
    CHECK(H.is_null_homotopic(morphism_add(gid, morphism_scale(Rat(-1), g))));
    CHECK_FALSE(H.is_null_homotopic(g));
}

TEST_CASE("no object is isomorphic to its shift") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    CHECK_FALSE(is_isomorphic(V0, tau(V0, 1)));
    CHECK(is_isomorphic(V0, V0));
}

TEST_CASE("split_summand recovers a direct summand") {
    GradedMF X = obj("w-2-2-5-10", "V_1_2");
    GradedMF Z = obj("w-2-2-5-10", "V_2_2");
    GradedMF Y = direct_sum(X, Z);
    GradedMF got = split_summand(Y, X);
    CHECK(is_isomorphic(got, Z));
    // no morphisms at all: far tau-shift
    CHECK_THROWS_AS(split_summand(X, tau(X, 40)), MfkError);
}

TEST_CASE("euler characteristic of an exceptional object") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    CHECK(euler_chi(V0, V0) == 1);
}

TEST_CASE("spectrum symmetries") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    GradedMF V12 = obj("w-2-2-5-10", "V_1_2");
    auto sp = spectrum(V0, V12);
    // sp(t(F'), t(F)) = sp(F, F')
    auto sp_t = spectrum(transpose_t(V12), transpose_t(V0));
    CHECK(sp == sp_t);
    // Serre relation: sp(F', T F) = {(1 + 2/h) - p : p in sp(F, F')}
    auto sp_serre = spectrum(V12, translate_T(V0));
    std::vector<std::pair<Rat, int>> reflected;
    for (const auto& [p, m] : sp) reflected.emplace_back(Rat(1) + Rat(2, 10) - p, m);
    std::sort(reflected.begin(), reflected.end());
    CHECK(sp_serre == reflected);
}

TEST_CASE("spectrum of V0 matches the hom-calculation lemma") {
    // sp(V0) = {0, 2(a+1)/h, X, 2(c+1)/h} with the middle entry X either
    // (b+1)/h or 2(b+1)/h; the computation decides the reading.
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    auto sp = spectrum(V0, V0);
    std::vector<Rat> values;
    for (const auto& [p, m] : sp)
        for (int k = 0; k < m; ++k) values.push_back(p);
    REQUIRE(values.size() == 4);
    const long long a = 2, b = 2, c = 5, h = 10;
    CHECK(values[0] == 0);
    CHECK(values[1] == Rat(2 * (a + 1), h));
    CHECK(values[3] == Rat(2 * (c + 1), h));
    bool single = values[2] == Rat(b + 1, h);
    bool doubled = values[2] == Rat(2 * (b + 1), h);
    CHECK((single || doubled));
    INFO("middle spectrum entry is " << rat_to_string(values[2]) << ", doubled reading = " << doubled);
    // record which reading holds for the open question
    CHECK(doubled);  // computed: the middle entry is 2(b - eps)/h like the outer ones
}

TEST_CASE("AR triangle of V0 gives V1") {
    auto c = load_case_file(default_data_dir() / "cases" / "w-2-2-5-10.json");
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    ARTriangle t = ar_triangle(V0);
    CHECK(t.u.chain_conditions_hold());
    CHECK(t.v.chain_conditions_hold());
    CHECK(validate(t.ar).ok());
    // gradings match the stored V1 row: (1^2,7)_{-5}
    GradingData g = parse_grading(grading_string(c, "V1", true), 10);
    auto sorted = [](std::vector<long long> v) { std::sort(v.rbegin(), v.rend()); return v; };
    CHECK(sorted(t.ar.s) == g.s);
    CHECK(sorted(t.ar.sbar) == g.sbar);
    CHECK(phase(t.ar) == Rat(-1, 2));

    // Auslander-Reiten dimension bookkeeping (the hom-count corollary):
    // hom(W, AR(Z)) = (hom(W,Z) - sigma) + (hom(W, tau Z) - sigma')
    GradedMF W = t.ar;  // probe with V1 itself
    long long lhs = hom_dim(W, t.ar);
    long long sigma = is_isomorphic(W, V0) ? 1 : 0;
    long long sigma2 = is_isomorphic(W, translate_T_inv(V0)) ? 1 : 0;
    long long rhs = (hom_dim(W, V0) - sigma) + (hom_dim(W, tau(V0, 1)) - sigma2);
    CHECK(lhs == rhs);
}

TEST_CASE("serre duality on seed pairs") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    GradedMF V12 = obj("w-2-2-5-10", "V_1_2");
    for (const GradedMF* M : {&V0, &V12})
        for (const GradedMF* N : {&V0, &V12}) {
            CHECK(hom_dim(*M, *N) == hom_dim(*N, serre(*M)));
        }
    CHECK(hom_dim(V0, serre(V0)) == 1);
    // S^2 = tau^{h+2} on the nose
    CHECK(serre(serre(V0)) == tau(V0, 10 + 2));
}

TEST_CASE("hom dimension is representative independent") {
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    GradedMF V12 = obj("w-2-2-5-10", "V_1_2");
    GradedMF padded = direct_sum(V0, trivial_summand(V0.w, V0.f, true, 2));
    CHECK(hom_dim(padded, V12) == hom_dim(V0, V12));
    CHECK(hom_dim(V12, padded) == hom_dim(V12, V0));
}

TEST_CASE("euler characteristic is additive in the first argument") {
    GradedMF V12 = obj("w-2-2-5-10", "V_1_2");
    GradedMF V22 = obj("w-2-2-5-10", "V_2_2");
    GradedMF V0 = obj("w-2-2-5-10", "V0");
    CHECK(euler_chi(direct_sum(V12, V22), V0) == euler_chi(V12, V0) + euler_chi(V22, V0));
}
