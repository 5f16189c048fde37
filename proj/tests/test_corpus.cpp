#include "mfk/corpus.hpp"
#include "mfk/weights.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace mfk;

namespace {
const std::vector<CaseEntry>& corpus() {
    static std::vector<CaseEntry> c = load_corpus(default_data_dir());
    return c;
}
}  // namespace

TEST_CASE("corpus has twenty-two cases matching the enumeration") {
    REQUIRE(corpus().size() == 22);
    auto systems = enumerate_eps_minus1_genus0(100);
    std::set<std::string> enumerated;
    for (const auto& s : systems) {
        std::string id = "w-" + std::to_string(s.w.a) + "-" + std::to_string(s.w.b) + "-" +
                         std::to_string(s.w.c) + "-" + std::to_string(s.w.h);
        enumerated.insert(id);
    }
    for (const auto& c : corpus()) {
        CHECK(enumerated.count(c.id) == 1);
        ChiResult chi = chi_series(c.w);
        REQUIRE(chi.verdict == ChiVerdict::Regular);
        CHECK(signature(c.w).alphas == c.sig);
    }
}

TEST_CASE("grading expansion notation") {
    // (8,22)_{-22} expands to pairs +-q shifted by -22
    GradingData g = parse_grading("(8,22)_{-22}", 42);
    CHECK(g.s == std::vector<long long>{0, -14, -30, -44});
    CHECK(g.sbar == g.s);
    CHECK(g.hphi == Rat(-22));

    // explicit bracket with separate sbar part and fractional subscript
    GradingData v0 = parse_grading("[17/2,1/2,-7/2,-11/2;11/2,7/2,-1/2,-17/2]_{-17/2}", 15);
    CHECK(v0.s == std::vector<long long>{0, -8, -12, -14});
    CHECK(v0.sbar == std::vector<long long>{-3, -5, -9, -17});

    // multiplicities and parenthesized negative values
    GradingData v1 = parse_grading("[13/2,1/2,(-3/2)^3,(-7/2)^2;(7/2)^2,(3/2)^3,-1/2,-13/2]_{-9/2}", 9);
    CHECK(v1.s.size() == 7);
    CHECK(v1.sbar.size() == 7);
    CHECK(std::count(v1.s.begin(), v1.s.end(), -6) == 3);

    CHECK_THROWS_AS(parse_grading("(8,22", 42), MfkError);
    CHECK_THROWS_AS(parse_grading("(7)_{1}", 4), MfkError);  // non-integer absolute grading
}

TEST_CASE("the (3,4,4;12) case has three identical arms") {
    for (const auto& c : corpus()) {
        if (c.id != "w-3-4-4-12") continue;
        auto g1 = parse_grading(c.objects.at("V_1_2").grading_raw, 12);
        auto g2 = parse_grading(c.objects.at("V_2_2").grading_raw, 12);
        auto g3 = parse_grading(c.objects.at("V_3_2").grading_raw, 12);
        CHECK(g1.s == g2.s);
        CHECK(g2.s == g3.s);
    }
}

TEST_CASE("arm coverage and rank conventions") {
    for (const auto& c : corpus()) {
        CHECK(c.objects.count("V0") == 1);
        CHECK(c.objects.count("V1") == 1);
        CHECK(c.objects.count("V1bar") == 1);
        for (int arm = 1; arm <= static_cast<int>(c.sig.size()); ++arm)
            for (long long j = 2; j <= c.alpha(arm); ++j)
                CHECK(c.objects.count(CaseEntry::arm_object_name(arm, static_cast<int>(j))) == 1);
        // rank of every stored factorization equals the grading length
        for (const auto& [name, obj] : c.objects) {
            if (!obj.has_q) continue;
            auto b = build_object(c, name, true);
            REQUIRE(b.problems.empty());
            CHECK(static_cast<int>(b.mf.s.size()) == b.mf.rank());
            CHECK(static_cast<int>(b.mf.sbar.size()) == b.mf.rank());
        }
    }
}

TEST_CASE("overlaid corpus passes verification completely") {
    VerifyReport rep = verify_corpus(corpus(), true);
    for (const auto& i : rep.issues)
        UNSCOPED_INFO(i.case_id << " " << i.object << " [" << i.stage << "] " << i.detail);
    CHECK(rep.ok());
    CHECK(rep.factorizations_checked >= 100);
}

TEST_CASE("raw corpus flags the documented defects") {
    VerifyReport rep = verify_corpus(corpus(), false);
    CHECK_FALSE(rep.ok());
    auto flagged = [&](const std::string& case_id, const std::string& object, const std::string& stage) {
        for (const auto& i : rep.issues)
            if (i.case_id == case_id && i.object == object && i.stage == stage) return true;
        return false;
    };
    // the two defects called out during data entry
    CHECK(flagged("w-3-5-6-15", "V1bar", "parse"));      // "x^z+z^2" and "x^y+yz"
    CHECK(flagged("w-2-4-7-14", "V1bar", "validate"));   // (1,1) printed "x"
    // every erratum has a raw counterpart on its object
    for (const auto& c : corpus())
        for (const auto& e : c.errata) {
            if (e.block == "grading") {
                CHECK((flagged(c.id, e.object, "grading") || flagged(c.id, e.object, "validate") ||
                       flagged(c.id, e.object, "mesh")));
            } else {
                CHECK((flagged(c.id, e.object, "validate") || flagged(c.id, e.object, "parse")));
            }
        }
}

TEST_CASE("entry errata are the unique homogeneous completions") {
    for (const auto& c : corpus()) {
        // group q0/q1 entry errata per object
        std::map<std::string, std::vector<const Erratum*>> by_object;
        for (const auto& e : c.errata)
            if (e.block == "q0" || e.block == "q1") by_object[e.object].push_back(&e);
        for (const auto& [object, errs] : by_object) {
            if (!c.objects.at(object).q0_replacement.empty()) continue;  // replaced wholesale
            BuiltObject overlaid = build_object(c, object, true);
            REQUIRE(overlaid.problems.empty());
            GradedMF F = overlaid.mf;
            std::vector<std::tuple<std::string, int, int>> positions;
            std::vector<Polynomial> expected;
            for (const Erratum* e : errs) {
                positions.emplace_back(e->block, e->row - 1, e->col - 1);
                expected.push_back(Polynomial::parse(e->corrected));
                (e->block == "q0" ? F.q0 : F.q1)[static_cast<size_t>(e->row - 1)][static_cast<size_t>(e->col - 1)] =
                    Polynomial();
            }
            auto solved = solve_entries(F, positions, 2);
            REQUIRE(solved.has_value());
            for (size_t k = 0; k < positions.size(); ++k) {
                INFO(c.id << " " << object << " erratum " << k);
                CHECK((*solved)[k] == expected[k]);
            }
        }
    }
}

TEST_CASE("canonical serialization is a fixed point") {
    // canonical form: JSON with sorted keys and fixed formatting
    for (const auto& file : corpus_files(default_data_dir())) {
        std::ifstream in(file);
        nlohmann::json j;
        in >> j;
        std::string once = j.dump(2);
        nlohmann::json again = nlohmann::json::parse(once);
        CHECK(again.dump(2) == once);
        CHECK(again == j);
    }
}
