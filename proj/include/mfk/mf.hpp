#pragma once

#include "mfk/poly.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mfk {

using PolyMat = std::vector<std::vector<Polynomial>>;

inline PolyMat pm_zero(int rows, int cols) {
    return PolyMat(static_cast<size_t>(rows), std::vector<Polynomial>(static_cast<size_t>(cols)));
}
inline PolyMat pm_identity(int n) {
    PolyMat r = pm_zero(n, n);
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)][static_cast<size_t>(i)] = Polynomial(Rat(1));
    return r;
}
inline int pm_rows(const PolyMat& m) { return static_cast<int>(m.size()); }
inline int pm_cols(const PolyMat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

inline PolyMat pm_mul(const PolyMat& a, const PolyMat& b) {
    int n = pm_rows(a), k = pm_cols(a), m = pm_cols(b);
    if (k != pm_rows(b)) throw MfkError("Internal", "polynomial matrix size mismatch");
    PolyMat r = pm_zero(n, m);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            const Polynomial& v = a[static_cast<size_t>(i)][static_cast<size_t>(t)];
            if (v.is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                const Polynomial& w = b[static_cast<size_t>(t)][static_cast<size_t>(j)];
                if (w.is_zero()) continue;
                r[static_cast<size_t>(i)][static_cast<size_t>(j)] += v * w;
            }
        }
    return r;
}
inline PolyMat pm_add(const PolyMat& a, const PolyMat& b) {
    PolyMat r = a;
    for (int i = 0; i < pm_rows(a); ++i)
        for (int j = 0; j < pm_cols(a); ++j) r[static_cast<size_t>(i)][static_cast<size_t>(j)] += b[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
}
inline PolyMat pm_sub(const PolyMat& a, const PolyMat& b) {
    PolyMat r = a;
    for (int i = 0; i < pm_rows(a); ++i)
        for (int j = 0; j < pm_cols(a); ++j) r[static_cast<size_t>(i)][static_cast<size_t>(j)] -= b[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
}
inline PolyMat pm_neg(const PolyMat& a) {
    PolyMat r = a;
    for (auto& row : r)
        for (auto& e : row) e = -e;
    return r;
}
inline PolyMat pm_scale(const Rat& c, const PolyMat& a) {
    PolyMat r = a;
    for (auto& row : r)
        for (auto& e : row) e = c * e;
    return r;
}
inline PolyMat pm_transpose(const PolyMat& a) {
    PolyMat r = pm_zero(pm_cols(a), pm_rows(a));
    for (int i = 0; i < pm_rows(a); ++i)
        for (int j = 0; j < pm_cols(a); ++j) r[static_cast<size_t>(j)][static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
}
inline bool pm_is_zero(const PolyMat& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}
/// Block matrix [[a, b], [c, d]].
inline PolyMat pm_block(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d) {
    int n1 = pm_rows(a), n2 = pm_rows(c), m1 = pm_cols(a), m2 = pm_cols(b);
    PolyMat r = pm_zero(n1 + n2, m1 + m2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < m1; ++j) r[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < m2; ++j) r[static_cast<size_t>(i)][static_cast<size_t>(m1 + j)] = b[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < m1; ++j) r[static_cast<size_t>(n1 + i)][static_cast<size_t>(j)] = c[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < m2; ++j) r[static_cast<size_t>(n1 + i)][static_cast<size_t>(m1 + j)] = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return r;
}

/// Graded matrix factorization (q0, q1) of f with h-scaled grading vectors.
///
/// Conventions (fixed by the requirement that the published grading tables,
/// the identity T^2 = tau^h and the phase subscripts all hold exactly):
///  - gradings s, sbar are stored as h-scaled integers; s entries are even,
///    sbar entries are congruent to h mod 2;
///  - homogeneity: h * deg (q0)[k][l] = h + s[k] - sbar[l] and
///    h * deg (q1)[k][l] = h + sbar[k] - s[l];
///  - q0 * q1 = q1 * q0 = f * Id;
///  - tau adds 2 to every grading entry;
///  - T maps (q0, q1, s, sbar) to (-q1, -q0, sbar + h, s + h);
///  - t maps (q0, q1, s, sbar) to (q1^T, q0^T, -s, -sbar).
struct GradedMF {
    WeightSystem w;
    Polynomial f;
    PolyMat q0, q1;
    std::vector<long long> s, sbar;

    int rank() const { return static_cast<int>(s.size()); }
    bool operator==(const GradedMF& o) const = default;
};

struct ValidationIssue {
    std::string kind;   // NotAFactorization | NotHomogeneous | BadShape | BadParity
    std::string block;  // "q0", "q1", "s", "sbar", "f"
    int row = 0, col = 0;  // 0-based
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const {
        if (ok()) return "ok";
        const auto& i = issues.front();
        return i.kind + " at " + i.block + "[" + std::to_string(i.row) + "][" + std::to_string(i.col) +
               "]: " + i.detail + (issues.size() > 1 ? " (+" + std::to_string(issues.size() - 1) + " more)" : "");
    }
};

/// Checks shape, grading parity, entrywise homogeneity and Q^2 = f * Id.
inline ValidationReport validate(const GradedMF& F) {
    ValidationReport rep;
    int r = F.rank();
    if (static_cast<int>(F.sbar.size()) != r || pm_rows(F.q0) != r || pm_cols(F.q0) != r ||
        pm_rows(F.q1) != r || pm_cols(F.q1) != r) {
        rep.issues.push_back({"BadShape", "q0", 0, 0, "inconsistent rank/shape"});
        return rep;
    }
    for (int k = 0; k < r; ++k) {
        if (F.s[static_cast<size_t>(k)] % 2 != 0)
            rep.issues.push_back({"BadParity", "s", k, 0, "s entry must be even"});
        if ((F.sbar[static_cast<size_t>(k)] + F.w.h) % 2 != 0)
            rep.issues.push_back({"BadParity", "sbar", k, 0, "sbar entry must be congruent to h mod 2"});
    }
    try {
        if (F.f.euler_degree_num(F.w) != 2 * F.w.h)
            rep.issues.push_back({"NotHomogeneous", "f", 0, 0, "f must have degree 2"});
    } catch (const MfkError& e) {
        rep.issues.push_back({"NotHomogeneous", "f", 0, 0, e.what()});
    }
    auto check_block = [&](const PolyMat& q, const char* name, bool is_q0) {
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) {
                const Polynomial& e = q[static_cast<size_t>(k)][static_cast<size_t>(l)];
                if (e.is_zero()) continue;
                long long want = is_q0 ? F.w.h + F.s[static_cast<size_t>(k)] - F.sbar[static_cast<size_t>(l)]
                                       : F.w.h + F.sbar[static_cast<size_t>(k)] - F.s[static_cast<size_t>(l)];
                if (!e.is_homogeneous_of(F.w, want)) {
                    std::string found;
                    try {
                        found = std::to_string(e.euler_degree_num(F.w));
                    } catch (...) {
                        found = "mixed";
                    }
                    rep.issues.push_back({"NotHomogeneous", name, k, l,
                                          "expected degree " + std::to_string(want) + ", found " + found});
                }
            }
    };
    check_block(F.q0, "q0", true);
    check_block(F.q1, "q1", false);

    auto check_product = [&](const PolyMat& a, const PolyMat& b, const char* name) {
        PolyMat p = pm_mul(a, b);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Polynomial want = (i == j) ? F.f : Polynomial();
                if (!(p[static_cast<size_t>(i)][static_cast<size_t>(j)] == want))
                    rep.issues.push_back({"NotAFactorization", name, i, j,
                                          "product entry " + p[static_cast<size_t>(i)][static_cast<size_t>(j)].to_string() +
                                              (i == j ? " != f" : " != 0")});
            }
    };
    check_product(F.q0, F.q1, "q0");
    check_product(F.q1, F.q0, "q1");
    return rep;
}

/// Degree shift: adds 2n to every stored grading entry.
inline GradedMF tau(const GradedMF& F, long long n) {
    GradedMF r = F;
    for (auto& v : r.s) v += 2 * n;
    for (auto& v : r.sbar) v += 2 * n;
    return r;
}

/// Translation functor T.
inline GradedMF translate_T(const GradedMF& F) {
    GradedMF r;
    r.w = F.w;
    r.f = F.f;
    r.q0 = pm_neg(F.q1);
    r.q1 = pm_neg(F.q0);
    r.s = F.sbar;
    for (auto& v : r.s) v += F.w.h;
    r.sbar = F.s;
    for (auto& v : r.sbar) v += F.w.h;
    return r;
}

inline GradedMF translate_T_inv(const GradedMF& F) {
    GradedMF r;
    r.w = F.w;
    r.f = F.f;
    r.q0 = pm_neg(F.q1);
    r.q1 = pm_neg(F.q0);
    r.s = F.sbar;
    for (auto& v : r.s) v -= F.w.h;
    r.sbar = F.s;
    for (auto& v : r.sbar) v -= F.w.h;
    return r;
}

/// Iterated translation T^n for any integer n.
inline GradedMF translate_T_pow(const GradedMF& F, long long n) {
    GradedMF r = F;
    for (; n > 0; --n) r = translate_T(r);
    for (; n < 0; ++n) r = translate_T_inv(r);
    return r;
}

/// Transpose functor t: (Q,S) -> (Q^T, -S).
inline GradedMF transpose_t(const GradedMF& F) {
    GradedMF r;
    r.w = F.w;
    r.f = F.f;
    r.q0 = pm_transpose(F.q1);
    r.q1 = pm_transpose(F.q0);
    r.s = F.s;
    for (auto& v : r.s) v = -v;
    r.sbar = F.sbar;
    for (auto& v : r.sbar) v = -v;
    return r;
}

/// Direct sum, block diagonal.
inline GradedMF direct_sum(const GradedMF& F, const GradedMF& G) {
    if (!(F.w == G.w) || !(F.f == G.f)) throw MfkError("IncompatibleEndpoints", "direct sum over different rings");
    GradedMF r;
    r.w = F.w;
    r.f = F.f;
    r.q0 = pm_block(F.q0, pm_zero(F.rank(), G.rank()), pm_zero(G.rank(), F.rank()), G.q0);
    r.q1 = pm_block(F.q1, pm_zero(F.rank(), G.rank()), pm_zero(G.rank(), F.rank()), G.q1);
    r.s = F.s;
    r.s.insert(r.s.end(), G.s.begin(), G.s.end());
    r.sbar = F.sbar;
    r.sbar.insert(r.sbar.end(), G.sbar.begin(), G.sbar.end());
    return r;
}

/// Rank-one trivial factorization (1, f) or (f, 1); always a zero object of
/// the homotopy category.
inline GradedMF trivial_summand(const WeightSystem& w, const Polynomial& f, bool one_in_q0,
                                long long shift = 0) {
    GradedMF r;
    r.w = w;
    r.f = f;
    if (one_in_q0) {
        // q0 entry constant: requires sbar = s + h
        r.q0 = {{Polynomial(Rat(1))}};
        r.q1 = {{f}};
        r.s = {shift};
        r.sbar = {shift + w.h};
    } else {
        r.q0 = {{f}};
        r.q1 = {{Polynomial(Rat(1))}};
        r.s = {shift};
        r.sbar = {shift - w.h};
    }
    return r;
}

/// Phase Tr(S)/(2r) in degree units, as an exact rational.
inline Rat phase(const GradedMF& F) {
    if (F.rank() == 0) throw MfkError("ZeroObject", "phase of a rank-0 object");
    long long tr = 0;
    for (long long v : F.s) tr += v;
    for (long long v : F.sbar) tr += v;
    return Rat(Int(tr), Int(2LL * F.rank() * F.w.h));
}

/// A degree-zero chain map between factorizations.
///
/// ga is rows(dst) x cols(src) on the s-side: h*deg ga[k][l] = dst.s[k] - src.s[l];
/// gb likewise on the sbar-side. Chain conditions:
///   ga * src.q0 == dst.q0 * gb   and   gb * src.q1 == dst.q1 * ga.
struct Morphism {
    GradedMF src, dst;
    PolyMat ga, gb;

    static Morphism identity(const GradedMF& F) {
        return Morphism{F, F, pm_identity(F.rank()), pm_identity(F.rank())};
    }
    static Morphism zero(const GradedMF& F, const GradedMF& G) {
        return Morphism{F, G, pm_zero(G.rank(), F.rank()), pm_zero(G.rank(), F.rank())};
    }
    bool chain_conditions_hold() const {
        return pm_is_zero(pm_sub(pm_mul(ga, src.q0), pm_mul(dst.q0, gb))) &&
               pm_is_zero(pm_sub(pm_mul(gb, src.q1), pm_mul(dst.q1, ga)));
    }
};

/// g2 after g1.
inline Morphism compose(const Morphism& g2, const Morphism& g1) {
    if (!(g1.dst == g2.src)) throw MfkError("IncompatibleEndpoints", "compose endpoint mismatch");
    return Morphism{g1.src, g2.dst, pm_mul(g2.ga, g1.ga), pm_mul(g2.gb, g1.gb)};
}
inline Morphism morphism_add(const Morphism& a, const Morphism& b) {
    if (!(a.src == b.src) || !(a.dst == b.dst)) throw MfkError("IncompatibleEndpoints", "sum endpoint mismatch");
    return Morphism{a.src, a.dst, pm_add(a.ga, b.ga), pm_add(a.gb, b.gb)};
}
inline Morphism morphism_scale(const Rat& c, const Morphism& a) {
    return Morphism{a.src, a.dst, pm_scale(c, a.ga), pm_scale(c, a.gb)};
}

/// tau(g): same matrices between shifted endpoints.
inline Morphism tau(const Morphism& g, long long n) {
    return Morphism{tau(g.src, n), tau(g.dst, n), g.ga, g.gb};
}
/// T(g): the two components swap roles.
inline Morphism translate_T(const Morphism& g) {
    return Morphism{translate_T(g.src), translate_T(g.dst), g.gb, g.ga};
}
inline Morphism translate_T_inv(const Morphism& g) {
    return Morphism{translate_T_inv(g.src), translate_T_inv(g.dst), g.gb, g.ga};
}
/// t(g): contravariant, t(dst) -> t(src), transposed matrices.
inline Morphism transpose_t(const Morphism& g) {
    return Morphism{transpose_t(g.dst), transpose_t(g.src), pm_transpose(g.ga), pm_transpose(g.gb)};
}

struct ConeTriangle {
    GradedMF cone;     // C(g)
    Morphism iota;     // dst -> C(g)
    Morphism pi;       // C(g) -> T(src)
};

/// Mapping cone of g: src -> dst.
inline ConeTriangle cone(const Morphism& g) {
    if (!g.chain_conditions_hold()) throw MfkError("InvalidMorphism", "cone of a non-chain-map");
    const GradedMF& F = g.src;
    const GradedMF& G = g.dst;
    GradedMF c;
    c.w = F.w;
    c.f = F.f;
    c.q0 = pm_block(pm_neg(F.q1), pm_zero(F.rank(), G.rank()), g.ga, G.q0);
    c.q1 = pm_block(pm_neg(F.q0), pm_zero(F.rank(), G.rank()), g.gb, G.q1);
    c.s = F.sbar;
    for (auto& v : c.s) v += F.w.h;
    c.s.insert(c.s.end(), G.s.begin(), G.s.end());
    c.sbar = F.s;
    for (auto& v : c.sbar) v += F.w.h;
    c.sbar.insert(c.sbar.end(), G.sbar.begin(), G.sbar.end());

    GradedMF TF = translate_T(F);
    Morphism iota{G, c, pm_zero(c.rank(), G.rank()), pm_zero(c.rank(), G.rank())};
    for (int i = 0; i < G.rank(); ++i) {
        iota.ga[static_cast<size_t>(F.rank() + i)][static_cast<size_t>(i)] = Polynomial(Rat(1));
        iota.gb[static_cast<size_t>(F.rank() + i)][static_cast<size_t>(i)] = Polynomial(Rat(1));
    }
    Morphism pi{c, TF, pm_zero(F.rank(), c.rank()), pm_zero(F.rank(), c.rank())};
    for (int i = 0; i < F.rank(); ++i) {
        pi.ga[static_cast<size_t>(i)][static_cast<size_t>(i)] = Polynomial(Rat(1));
        pi.gb[static_cast<size_t>(i)][static_cast<size_t>(i)] = Polynomial(Rat(1));
    }
    return ConeTriangle{std::move(c), std::move(iota), std::move(pi)};
}

struct Reduction {
    GradedMF reduced;
    Morphism project;  // input -> reduced
    Morphism include;  // reduced -> input, project o include = id(reduced)
};

namespace detail {

/// Nonzero constant of degree zero, possibly times the unit i. Such entries
/// are invertible and can serve as reduction pivots.
inline bool is_unit_entry(const Polynomial& p) {
    if (p.size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    return m[0] == 0 && m[1] == 0 && m[2] == 0 && m[3] == 0 && m[4] == 0 && m[6] == 0;
}
inline Polynomial unit_inverse(const Polynomial& p) {
    const auto& [m, c] = *p.terms().begin();
    Polynomial r(Rat(1) / c);
    if (m[5]) r = -(r * Polynomial::variable(5));  // 1/i = -i
    return r;
}

}  // namespace detail

/// Splits off trivial summands until no invertible entries remain. Returns
/// the reduced object together with transport morphisms.
inline Reduction reduce_with_maps(const GradedMF& input) {
    GradedMF F = input;
    int r0 = input.rank();
    PolyMat pa = pm_identity(r0), pb = pm_identity(r0);  // input -> current
    PolyMat ia = pm_identity(r0), ib = pm_identity(r0);  // current -> input
    auto erase_row = [](PolyMat& m, int k) { m.erase(m.begin() + k); };
    auto erase_col = [](PolyMat& m, int k) {
        for (auto& row : m) row.erase(row.begin() + k);
    };

    for (;;) {
        int pr = -1, pc = -1;
        bool in_q0 = true;
        for (int i = 0; i < F.rank() && pr < 0; ++i)
            for (int j = 0; j < F.rank() && pr < 0; ++j) {
                if (detail::is_unit_entry(F.q0[static_cast<size_t>(i)][static_cast<size_t>(j)])) {
                    pr = i, pc = j, in_q0 = true;
                } else if (detail::is_unit_entry(F.q1[static_cast<size_t>(i)][static_cast<size_t>(j)])) {
                    pr = i, pc = j, in_q0 = false;
                }
            }
        if (pr < 0) break;

        // qp holds the pivot; qo is the partner block.
        PolyMat& qp = in_q0 ? F.q0 : F.q1;
        PolyMat& qo = in_q0 ? F.q1 : F.q0;
        Polynomial inv = detail::unit_inverse(qp[static_cast<size_t>(pr)][static_cast<size_t>(pc)]);

        // Clear column pc of qp using row pr: row_i -= (qp[i][pc] * inv) * row_pr.
        // Row ops on qp are basis changes on its row side; the inverse op acts
        // on the columns of qo and on the transports.
        for (int i = 0; i < F.rank(); ++i) {
            if (i == pr) continue;
            Polynomial factor = qp[static_cast<size_t>(i)][static_cast<size_t>(pc)] * inv;
            if (factor.is_zero()) continue;
            for (int j = 0; j < F.rank(); ++j)
                qp[static_cast<size_t>(i)][static_cast<size_t>(j)] -= factor * qp[static_cast<size_t>(pr)][static_cast<size_t>(j)];
            // qo gets the inverse column op: col_pr += factor * col_i
            for (int j = 0; j < F.rank(); ++j)
                qo[static_cast<size_t>(j)][static_cast<size_t>(pr)] += qo[static_cast<size_t>(j)][static_cast<size_t>(i)] * factor;
            // transports: row-side forward map gets the row op; backward map the inverse col op
            PolyMat& fwd = in_q0 ? pa : pb;
            PolyMat& bwd = in_q0 ? ia : ib;
            for (int j = 0; j < pm_cols(fwd); ++j)
                fwd[static_cast<size_t>(i)][static_cast<size_t>(j)] -= factor * fwd[static_cast<size_t>(pr)][static_cast<size_t>(j)];
            for (int j = 0; j < pm_rows(bwd); ++j)
                bwd[static_cast<size_t>(j)][static_cast<size_t>(pr)] += bwd[static_cast<size_t>(j)][static_cast<size_t>(i)] * factor;
        }
        // Clear row pr of qp using column pc: col_j -= (qp[pr][j] * inv) * col_pc.
        for (int j = 0; j < F.rank(); ++j) {
            if (j == pc) continue;
            Polynomial factor = qp[static_cast<size_t>(pr)][static_cast<size_t>(j)] * inv;
            if (factor.is_zero()) continue;
            for (int i = 0; i < F.rank(); ++i)
                qp[static_cast<size_t>(i)][static_cast<size_t>(j)] -= qp[static_cast<size_t>(i)][static_cast<size_t>(pc)] * factor;
            for (int i = 0; i < F.rank(); ++i)
                qo[static_cast<size_t>(pc)][static_cast<size_t>(i)] += factor * qo[static_cast<size_t>(j)][static_cast<size_t>(i)];
            PolyMat& fwd = in_q0 ? pb : pa;
            PolyMat& bwd = in_q0 ? ib : ia;
            for (int t = 0; t < pm_cols(fwd); ++t)
                fwd[static_cast<size_t>(pc)][static_cast<size_t>(t)] += factor * fwd[static_cast<size_t>(j)][static_cast<size_t>(t)];
            for (int t = 0; t < pm_rows(bwd); ++t)
                bwd[static_cast<size_t>(t)][static_cast<size_t>(j)] -= bwd[static_cast<size_t>(t)][static_cast<size_t>(pc)] * factor;
        }

        // Delete the pivot row/column pair.
        int s_idx = in_q0 ? pr : pc;     // index into s
        int sbar_idx = in_q0 ? pc : pr;  // index into sbar
        erase_row(F.q0, s_idx);
        erase_col(F.q0, sbar_idx);
        erase_row(F.q1, sbar_idx);
        erase_col(F.q1, s_idx);
        F.s.erase(F.s.begin() + s_idx);
        F.sbar.erase(F.sbar.begin() + sbar_idx);
        erase_row(pa, s_idx);
        erase_col(ia, s_idx);
        erase_row(pb, sbar_idx);
        erase_col(ib, sbar_idx);
    }

    Reduction red;
    red.reduced = F;
    red.project = Morphism{input, F, std::move(pa), std::move(pb)};
    red.include = Morphism{F, input, std::move(ia), std::move(ib)};
    return red;
}

inline GradedMF reduce(const GradedMF& F) { return reduce_with_maps(F).reduced; }

inline bool is_zero_object(const GradedMF& F) { return reduce(F).rank() == 0; }

}  // namespace mfk
