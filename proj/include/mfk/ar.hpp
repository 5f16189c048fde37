#pragma once

#include "mfk/corpus.hpp"
#include "mfk/hom.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mfk {

/// tau_AR = T^{d-2} tau^{-eps}; with d = 2 and eps = -1 this is tau itself.
inline GradedMF ar_translate(const GradedMF& F) { return tau(F, 1); }

/// Serre functor S = T tau_AR.
inline GradedMF serre(const GradedMF& F) { return translate_T(tau(F, 1)); }

struct ARTriangle {
    GradedMF tau_z;  // tau_AR(Z)
    GradedMF ar;     // AR(Z), the middle term
    GradedMF z;
    Morphism u;  // tau_AR(Z) -> AR(Z)
    Morphism v;  // AR(Z) -> Z
    Morphism w;  // Z -> T tau_AR(Z), the Serre-dual of the identity
};

/// Auslander-Reiten triangle of an indecomposable Z: the connecting class
/// Z -> T tau Z is unique up to scalar and the middle term is the shifted
/// reduced cone.
inline ARTriangle ar_triangle(const GradedMF& Z) {
    GradedMF SZ = serre(Z);
    HomProblem H(Z, SZ);
    if (H.dim() == 0) throw MfkError("NoConnectingMap", "Hom(Z, T tau Z) = 0");
    if (H.dim() > 1)
        throw MfkError("AmbiguousConnectingMap",
                       "Hom(Z, T tau Z) has dimension " + std::to_string(H.dim()));
    Morphism w = H.basis()[0];
    ConeTriangle C = cone(w);
    Reduction red = reduce_with_maps(C.cone);
    ARTriangle out{tau(Z, 1), translate_T_inv(red.reduced), Z,
                   translate_T_inv(compose(red.project, C.iota)),
                   translate_T_inv(compose(C.pi, red.include)), w};
    return out;
}

/// Block morphism (+)_i g_i : (+)_i src_i -> dst with common target.
inline Morphism fan_in(const std::vector<Morphism>& gs) {
    GradedMF src = gs.front().src;
    for (size_t i = 1; i < gs.size(); ++i) src = direct_sum(src, gs[i].src);
    const GradedMF& dst = gs.front().dst;
    Morphism out = Morphism::zero(src, dst);
    int col_s = 0, col_sbar = 0;
    for (const auto& g : gs) {
        for (int k = 0; k < g.dst.rank(); ++k)
            for (int l = 0; l < g.src.rank(); ++l) {
                out.ga[static_cast<size_t>(k)][static_cast<size_t>(col_s + l)] += g.ga[static_cast<size_t>(k)][static_cast<size_t>(l)];
                out.gb[static_cast<size_t>(k)][static_cast<size_t>(col_sbar + l)] += g.gb[static_cast<size_t>(k)][static_cast<size_t>(l)];
            }
        col_s += g.src.rank();
        col_sbar += g.src.rank();
    }
    return out;
}

/// Projection (+)_i X_i -> X_j.
inline Morphism summand_projection(const std::vector<GradedMF>& parts, int j) {
    GradedMF src = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) src = direct_sum(src, parts[i]);
    Morphism out = Morphism::zero(src, parts[static_cast<size_t>(j)]);
    int off = 0;
    for (int i = 0; i < j; ++i) off += parts[static_cast<size_t>(i)].rank();
    for (int k = 0; k < parts[static_cast<size_t>(j)].rank(); ++k) {
        out.ga[static_cast<size_t>(k)][static_cast<size_t>(off + k)] = Polynomial(Rat(1));
        out.gb[static_cast<size_t>(k)][static_cast<size_t>(off + k)] = Polynomial(Rat(1));
    }
    return out;
}

inline GradedMF specialize_mf(const GradedMF& F, const std::map<std::string, Rat>& values) {
    GradedMF r = F;
    r.f = F.f.specialize(values);
    for (auto& row : r.q0)
        for (auto& e : row) e = e.specialize(values);
    for (auto& row : r.q1)
        for (auto& e : row) e = e.specialize(values);
    return r;
}

/// The regenerated exceptional collection of one case, with the P^1 points
/// and the morphism data used by the relation checks.
struct CollectionRecord {
    std::string case_id;
    WeightSystem w;
    std::vector<long long> sig;
    std::map<std::string, Rat> params;
    std::map<std::string, GradedMF> objects;
    std::vector<std::pair<Rat, Rat>> lambdas;  // [u1 : u2], normalized
    std::vector<Morphism> f_maps;   // f_i : V_i_2 -> V1bar
    std::vector<Morphism> g_maps;   // g_i : V_i_2 -> T V1
    std::vector<Morphism> fp_maps;  // f'_i : V1bar_prime -> V_i_2
    Morphism e1, e2;                // basis of Hom(V1bar, T V1)
    std::vector<std::string> log;
};

/// Executes the generation recipe: V1 = AR(V0); arm descent by splitting
/// known summands off AR middle terms; V1bar as the cone over V1 -> V_{i,1};
/// lambda points from the connecting morphisms; V2 and V1bar' cones.
inline CollectionRecord build_collection(const CaseEntry& c, const std::map<std::string, Rat>& params,
                                         bool check_against_corpus = true) {
    CollectionRecord rec;
    rec.case_id = c.id;
    rec.w = c.w;
    rec.sig = c.sig;
    rec.params = params;
    auto note = [&](const std::string& s) { rec.log.push_back(s); };

    auto load = [&](const std::string& name) {
        BuiltObject b = build_object(c, name, true);
        if (!b.problems.empty())
            throw MfkError("CorpusError", c.id + " " + name + ": " + b.problems.front());
        if (!b.has_matrices) throw MfkError("CorpusError", c.id + " " + name + " has no matrices");
        GradedMF F = specialize_mf(b.mf, params);
        if (F.f.has_params() || F.f.has_unit_i())
            throw MfkError("ParametricInput", "specialization left parameters in f");
        ValidationReport v = validate(F);
        if (!v.ok()) throw MfkError("CorpusError", c.id + " " + name + ": " + v.summary());
        return F;
    };

    int r = static_cast<int>(c.sig.size());
    rec.objects["V0"] = load("V0");

    // V1 = AR(V0)
    ARTriangle t0 = ar_triangle(rec.objects["V0"]);
    rec.objects["V1"] = t0.ar;
    note("V1 = AR(V0), rank " + std::to_string(t0.ar.rank()));

    // arm descent
    for (int i = 1; i <= r; ++i) {
        long long alpha = c.alpha(i);
        rec.objects[CaseEntry::arm_object_name(i, static_cast<int>(alpha))] =
            load(CaseEntry::arm_object_name(i, static_cast<int>(alpha)));
        for (long long j = alpha; j >= 2; --j) {
            const GradedMF& Vij = rec.objects[CaseEntry::arm_object_name(i, static_cast<int>(j))];
            ARTriangle t = ar_triangle(Vij);
            GradedMF lower;  // tau V_{i,j-1}
            if (j == alpha) {
                lower = t.ar;
            } else {
                const GradedMF& above = rec.objects[CaseEntry::arm_object_name(i, static_cast<int>(j) + 1)];
                lower = split_summand(t.ar, above);
            }
            rec.objects[CaseEntry::arm_object_name(i, static_cast<int>(j) - 1)] = reduce(tau(lower, -1));
        }
    }

    // V1bar = cone(V1 -> V_{i,1}) for each arm; all isomorphic
    std::vector<GradedMF> vbars;
    std::vector<Morphism> deltas;  // V1bar_i -> T V1
    for (int i = 1; i <= r; ++i) {
        const GradedMF& Vi1 = rec.objects[CaseEntry::arm_object_name(i, 1)];
        HomProblem H(rec.objects["V1"], Vi1);
        if (H.dim() != 1)
            throw MfkError("GenerationMismatch",
                           "dim Hom(V1, V_" + std::to_string(i) + ",1) = " + std::to_string(H.dim()));
        ConeTriangle C = cone(H.basis()[0]);
        Reduction red = reduce_with_maps(C.cone);
        vbars.push_back(red.reduced);
        deltas.push_back(compose(C.pi, red.include));
    }
    rec.objects["V1bar"] = vbars[0];
    for (int i = 1; i < r; ++i)
        if (!is_isomorphic(vbars[0], vbars[static_cast<size_t>(i)]))
            throw MfkError("GenerationMismatch", "cone(V1 -> V_{i,1}) depends on the arm");
    note("V1bar rank " + std::to_string(vbars[0].rank()) + ", consistent across " + std::to_string(r) + " arms");
    if (check_against_corpus && c.objects.count("V1bar")) {
        BuiltObject stored = build_object(c, "V1bar", true);
        if (stored.has_matrices && stored.problems.empty()) {
            GradedMF S = specialize_mf(stored.mf, params);
            if (!is_isomorphic(rec.objects["V1bar"], S))
                throw MfkError("GenerationMismatch", "generated V1bar not isomorphic to stored V1bar");
            note("generated V1bar isomorphic to stored V1bar");
        }
    }

    // basis of Hom(V1bar, T V1) and the lambda points
    GradedMF TV1 = translate_T(rec.objects["V1"]);
    HomProblem E(rec.objects["V1bar"], TV1);
    if (E.dim() != 2)
        throw MfkError("GenerationMismatch", "dim Hom(V1bar, T V1) = " + std::to_string(E.dim()));
    std::vector<Morphism> ebasis = E.basis();
    rec.e1 = ebasis[0];
    rec.e2 = ebasis[1];
    for (int i = 0; i < r; ++i) {
        Morphism d = deltas[static_cast<size_t>(i)];
        if (i > 0) {
            auto iso = iso_between(rec.objects["V1bar"], vbars[static_cast<size_t>(i)]);
            if (!iso) throw MfkError("GenerationMismatch", "lost isomorphism between V1bar representatives");
            d = compose(d, iso->first);
        }
        auto coords = E.solve_in_span(ebasis, d);
        if (!coords) throw MfkError("GenerationMismatch", "connecting morphism outside Hom(V1bar, T V1)");
        Rat u1 = (*coords)[0], u2 = (*coords)[1];
        if (u1 == 0 && u2 == 0) throw MfkError("GenerationMismatch", "zero connecting morphism");
        // projective normalization: first nonzero coordinate = 1
        if (u1 != 0) {
            u2 /= u1;
            u1 = 1;
        } else {
            u2 = 1;
        }
        rec.lambdas.emplace_back(u1, u2);
    }

    // f_i and g_i
    for (int i = 1; i <= r; ++i) {
        const GradedMF& Vi2 = rec.objects[CaseEntry::arm_object_name(i, 2)];
        HomProblem Hf(Vi2, rec.objects["V1bar"]);
        if (Hf.dim() != 1) throw MfkError("GenerationMismatch", "dim Hom(V_i_2, V1bar) != 1");
        rec.f_maps.push_back(Hf.basis()[0]);
        HomProblem Hg(Vi2, TV1);
        if (Hg.dim() != 1) throw MfkError("GenerationMismatch", "dim Hom(V_i_2, T V1) != 1");
        rec.g_maps.push_back(Hg.basis()[0]);
    }

    // V2: T(V2) = cone((+) V_i_2 -> V1bar (+) V1bar with components u1_i f_i, u2_i f_i
    {
        GradedMF V1b2 = direct_sum(rec.objects["V1bar"], rec.objects["V1bar"]);
        std::vector<Morphism> cols;
        for (int i = 0; i < r; ++i) {
            const Morphism& f = rec.f_maps[static_cast<size_t>(i)];
            Morphism into = Morphism::zero(f.src, V1b2);
            int rank1 = rec.objects["V1bar"].rank();
            auto put = [&](const Morphism& comp, const Rat& scale, int block) {
                for (int k = 0; k < comp.dst.rank(); ++k)
                    for (int l = 0; l < comp.src.rank(); ++l) {
                        into.ga[static_cast<size_t>(block * rank1 + k)][static_cast<size_t>(l)] +=
                            scale * comp.ga[static_cast<size_t>(k)][static_cast<size_t>(l)];
                        into.gb[static_cast<size_t>(block * rank1 + k)][static_cast<size_t>(l)] +=
                            scale * comp.gb[static_cast<size_t>(k)][static_cast<size_t>(l)];
                    }
            };
            put(f, rec.lambdas[static_cast<size_t>(i)].first, 0);
            put(f, rec.lambdas[static_cast<size_t>(i)].second, 1);
            cols.push_back(into);
        }
        Morphism Phi = fan_in(cols);
        rec.objects["V2"] = translate_T_inv(reduce(cone(Phi).cone));
        note("V2 rank " + std::to_string(rec.objects["V2"].rank()));
    }

    // V1bar' = tau t V1bar; f'_i from the triangle V1bar' -> (+) V_i_2 -> V1bar
    {
        rec.objects["V1bar_prime"] = tau(transpose_t(rec.objects["V1bar"]), 1);
        Morphism F = fan_in(rec.f_maps);
        ConeTriangle C = cone(F);
        Reduction red = reduce_with_maps(C.cone);
        GradedMF D = translate_T_inv(red.reduced);
        auto iso = iso_between(rec.objects["V1bar_prime"], D);
        if (!iso)
            throw MfkError("GenerationMismatch", "T^{-1} cone((+)f_i) not isomorphic to tau t V1bar");
        Morphism conn = translate_T_inv(compose(C.pi, red.include));  // D -> (+) V_i_2
        std::vector<GradedMF> parts;
        for (const auto& f : rec.f_maps) parts.push_back(f.src);
        for (int i = 0; i < r; ++i)
            rec.fp_maps.push_back(compose(summand_projection(parts, i), compose(conn, iso->first)));
    }
    return rec;
}

struct RelationReport {
    bool relation1 = true;           // (u1 e1 + u2 e2) o f_i ~ 0 for each arm
    bool relation1_negative = true;  // perturbed coefficients do not vanish
    bool relation2 = true;           // sum_i (e_k o f_i) o f'_i ~ 0, k = 1,2
    bool vbar_selftranspose = true;  // each f'_i is a nonzero multiple of tau t f_i
    bool lambdas_distinct = true;
    long long hom_v1barp_tv1 = -1;  // dim Hom(V1bar', T V1), expect r - 2
    std::vector<std::string> failures;
    bool ok() const { return relation1 && relation1_negative && relation2 && vbar_selftranspose && lambdas_distinct; }
};

inline RelationReport verify_relations(const CollectionRecord& rec) {
    RelationReport rep;
    int r = static_cast<int>(rec.sig.size());
    GradedMF TV1 = translate_T(rec.objects.at("V1"));

    // distinctness of the P^1 points
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const auto& [a1, a2] = rec.lambdas[static_cast<size_t>(i)];
            const auto& [b1, b2] = rec.lambdas[static_cast<size_t>(j)];
            if (a1 * b2 - a2 * b1 == 0) {
                rep.lambdas_distinct = false;
                rep.failures.push_back("lambda_" + std::to_string(i + 1) + " = lambda_" + std::to_string(j + 1));
            }
        }

    for (int i = 0; i < r; ++i) {
        const Morphism& f = rec.f_maps[static_cast<size_t>(i)];
        const auto& [u1, u2] = rec.lambdas[static_cast<size_t>(i)];
        Morphism lhs = compose(morphism_add(morphism_scale(u1, rec.e1), morphism_scale(u2, rec.e2)), f);
        if (!is_null_homotopic(lhs)) {
            rep.relation1 = false;
            rep.failures.push_back("relation1 fails at arm " + std::to_string(i + 1));
        }
        // negative control at the point [-u2 : u1], which is never [u1 : u2]
        Morphism bad = compose(morphism_add(morphism_scale(-u2, rec.e1), morphism_scale(u1, rec.e2)), f);
        if (is_null_homotopic(bad)) {
            rep.relation1_negative = false;
            rep.failures.push_back("perturbed relation1 unexpectedly vanishes at arm " + std::to_string(i + 1));
        }
    }

    // relation2: sum_i (e_k o f_i) o f'_i ~ 0
    for (int k = 0; k < 2; ++k) {
        const Morphism& e = k == 0 ? rec.e1 : rec.e2;
        Morphism acc = Morphism::zero(rec.objects.at("V1bar_prime"), TV1);
        for (int i = 0; i < r; ++i)
            acc = morphism_add(acc, compose(compose(e, rec.f_maps[static_cast<size_t>(i)]), rec.fp_maps[static_cast<size_t>(i)]));
        if (!is_null_homotopic(acc)) {
            rep.relation2 = false;
            rep.failures.push_back("relation2 fails for e" + std::to_string(k + 1));
        }
    }

    rep.hom_v1barp_tv1 = hom_dim(rec.objects.at("V1bar_prime"), TV1);

    // self-transpose property of the V1bar' triangle: f'_i is a nonzero
    // multiple of the tau-shifted transpose of f_i
    for (int i = 0; i < r; ++i) {
        const GradedMF& Vi2 = rec.f_maps[static_cast<size_t>(i)].src;
        Morphism tf = tau(transpose_t(rec.f_maps[static_cast<size_t>(i)]), 1);  // tau t V1bar -> tau t V_i_2
        auto iso = iso_between(tf.dst, Vi2);
        if (!iso) {
            rep.vbar_selftranspose = false;
            rep.failures.push_back("tau t V_i_2 not isomorphic to V_i_2 at arm " + std::to_string(i + 1));
            continue;
        }
        Morphism candidate = compose(iso->first, tf);  // V1bar' -> V_i_2
        HomProblem H(rec.objects.at("V1bar_prime"), Vi2);
        auto coeff = H.solve_in_span({candidate}, rec.fp_maps[static_cast<size_t>(i)]);
        bool fp_zero = H.is_null_homotopic(rec.fp_maps[static_cast<size_t>(i)]);
        if (fp_zero || !coeff || (*coeff)[0] == 0) {
            rep.vbar_selftranspose = false;
            rep.failures.push_back("f'_" + std::to_string(i + 1) + " is not a nonzero multiple of tau t f_i");
        }
    }
    return rep;
}

}  // namespace mfk
