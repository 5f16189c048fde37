#pragma once

#include "mfk/linalg.hpp"
#include "mfk/mf.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace mfk {

namespace detail {

/// Monomial basis of one matrix entry of prescribed h-scaled degree.
struct EntrySlot {
    int block;  // 0 = ga, 1 = gb
    int k, l;
    std::vector<Monomial> basis;  // descending canonical order
    int offset = 0;               // first variable index
};

inline std::vector<Monomial> piece_monomials(long long deg_num, const WeightSystem& w) {
    std::vector<Monomial> out;
    if (deg_num < 0 || deg_num % 2) return out;
    long long weight = deg_num / 2;
    for (long long i = 0; i * w.a <= weight; ++i)
        for (long long j = 0; i * w.a + j * w.b <= weight; ++j) {
            long long rem = weight - i * w.a - j * w.b;
            if (rem % w.c) continue;
            Monomial m;
            m[0] = static_cast<uint16_t>(i);
            m[1] = static_cast<uint16_t>(j);
            m[2] = static_cast<uint16_t>(rem / w.c);
            out.push_back(m);
        }
    std::sort(out.begin(), out.end(), MonomialDescending{});
    return out;
}

}  // namespace detail

/// Linear-algebra context for Hom(src, dst): variable layout for chain-map
/// pairs (ga, gb), the chain-condition kernel and the null-homotopy image.
class HomProblem {
  public:
    HomProblem(GradedMF src, GradedMF dst) : src_(std::move(src)), dst_(std::move(dst)) {
        if (!(src_.w == dst_.w) || !(src_.f == dst_.f))
            throw MfkError("IncompatibleEndpoints", "hom between factorizations of different f");
        for (const auto& q : {&src_.q0, &src_.q1, &dst_.q0, &dst_.q1})
            for (const auto& row : *q)
                for (const auto& e : row)
                    if (e.has_params())
                        throw MfkError("ParametricInput", "specialize parameters before hom computations");
        if (src_.f.has_params()) throw MfkError("ParametricInput", "specialize parameters before hom computations");
        build();
    }

    const GradedMF& src() const { return src_; }
    const GradedMF& dst() const { return dst_; }
    int dim() const { return dim_; }
    const std::vector<SparseRow>& basis_vectors() const { return hom_basis_; }
    int nvars() const { return nvars_; }

    Morphism morphism_from_vector(const SparseRow& v) const {
        Morphism g = Morphism::zero(src_, dst_);
        for (const auto& [var, coef] : v) {
            const detail::EntrySlot& slot = slot_of_var(var);
            const Monomial& mono = slot.basis[static_cast<size_t>(var - slot.offset)];
            Polynomial& target = (slot.block == 0 ? g.ga : g.gb)[static_cast<size_t>(slot.k)][static_cast<size_t>(slot.l)];
            Polynomial monopoly(coef);
            for (int vk = 0; vk < kNumVars; ++vk)
                if (mono[vk]) monopoly *= Polynomial::variable(vk, mono[vk]);
            target += monopoly;
        }
        return g;
    }

    std::vector<Morphism> basis() const {
        std::vector<Morphism> out;
        out.reserve(hom_basis_.size());
        for (const auto& v : hom_basis_) out.push_back(morphism_from_vector(v));
        return out;
    }

    /// Coordinates of a chain map in variable space.
    SparseRow vectorize(const Morphism& g) const {
        SparseRow out;
        auto emit = [&](int block, const PolyMat& mat) {
            for (const auto& slot : slots_) {
                if (slot.block != block) continue;
                const Polynomial& e = mat[static_cast<size_t>(slot.k)][static_cast<size_t>(slot.l)];
                for (const auto& [m, c] : e.terms()) {
                    auto it = std::lower_bound(slot.basis.begin(), slot.basis.end(), m, MonomialDescending{});
                    if (it == slot.basis.end() || !(*it == m))
                        throw MfkError("InvalidMorphism", "entry has wrong degree for this hom space");
                    out.emplace_back(slot.offset + static_cast<int>(it - slot.basis.begin()), c);
                }
            }
        };
        emit(0, g.ga);
        emit(1, g.gb);
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    /// Residual of g modulo null-homotopies (empty iff null-homotopic).
    SparseRow reduce_mod_homotopy(const Morphism& g) const {
        SparseRow v = vectorize(g);
        homotopy_.reduce(v);
        return v;
    }

    bool is_null_homotopic(const Morphism& g) const { return reduce_mod_homotopy(g).empty(); }

    /// Expresses [target] as a combination of the classes of `gens` modulo
    /// homotopy; returns the coefficients if possible.
    std::optional<std::vector<Rat>> solve_in_span(const std::vector<Morphism>& gens,
                                                  const Morphism& target) const {
        int main = nvars_;
        int total = main + static_cast<int>(gens.size());
        SparseRref rref(total);
        for (size_t j = 0; j < gens.size(); ++j) {
            SparseRow row = reduce_mod_homotopy(gens[j]);
            row.emplace_back(main + static_cast<int>(j), Rat(1));
            rref.add_row(std::move(row));
        }
        SparseRow t = reduce_mod_homotopy(target);
        rref.reduce(t);
        std::vector<Rat> coeffs(gens.size(), Rat(0));
        for (const auto& [c, v] : t) {
            if (c < main) return std::nullopt;  // not in span
            coeffs[static_cast<size_t>(c - main)] = -v;
        }
        return coeffs;
    }

  private:
    GradedMF src_, dst_;
    std::vector<detail::EntrySlot> slots_;
    int nvars_ = 0;
    SparseRref homotopy_{0};
    std::vector<SparseRow> hom_basis_;
    int dim_ = 0;

    const detail::EntrySlot& slot_of_var(int var) const {
        auto it = std::upper_bound(slots_.begin(), slots_.end(), var,
                                   [](int v, const detail::EntrySlot& s) { return v < s.offset; });
        return *(it - 1);
    }

    void build() {
        const WeightSystem& w = src_.w;
        int r = src_.rank(), rp = dst_.rank();
        // variable slots
        for (int k = 0; k < rp; ++k)
            for (int l = 0; l < r; ++l) {
                detail::EntrySlot s{0, k, l,
                                    detail::piece_monomials(dst_.s[static_cast<size_t>(k)] - src_.s[static_cast<size_t>(l)], w), nvars_};
                if (!s.basis.empty()) {
                    nvars_ += static_cast<int>(s.basis.size());
                    slots_.push_back(std::move(s));
                }
            }
        for (int k = 0; k < rp; ++k)
            for (int l = 0; l < r; ++l) {
                detail::EntrySlot s{1, k, l,
                                    detail::piece_monomials(dst_.sbar[static_cast<size_t>(k)] - src_.sbar[static_cast<size_t>(l)], w),
                                    nvars_};
                if (!s.basis.empty()) {
                    nvars_ += static_cast<int>(s.basis.size());
                    slots_.push_back(std::move(s));
                }
            }

        // chain-condition constraint rows, accumulated per output monomial
        using Key = std::tuple<int, int, int, Monomial>;  // (eq, k, j, monomial)
        std::map<Key, SparseRow> rows;
        auto accumulate = [&](int eq, int k, int j, const Polynomial& factor, const Monomial& var_mono,
                              int var, const Rat& sign) {
            for (const auto& [fm, fc] : factor.terms()) {
                Monomial prod = fm;
                Rat coef = fc * sign;
                for (int t = 0; t < kNumVars; ++t) prod.e[t] = static_cast<uint16_t>(prod.e[t] + var_mono.e[t]);
                // no unit reduction needed: parameter-free monomials
                rows[{eq, k, j, prod}].emplace_back(var, coef);
            }
        };
        for (const auto& slot : slots_) {
            for (size_t b = 0; b < slot.basis.size(); ++b) {
                int var = slot.offset + static_cast<int>(b);
                const Monomial& mono = slot.basis[b];
                if (slot.block == 0) {
                    // C1[k][j] += ga[k][m] * q0s[m][j]; C2[k'][j'] -= q1d[k'][m'] * ga[m'][j']
                    for (int j = 0; j < r; ++j)
                        accumulate(0, slot.k, j, src_.q0[static_cast<size_t>(slot.l)][static_cast<size_t>(j)], mono, var, Rat(1));
                    for (int k = 0; k < rp; ++k)
                        accumulate(1, k, slot.l, dst_.q1[static_cast<size_t>(k)][static_cast<size_t>(slot.k)], mono, var, Rat(-1));
                } else {
                    // C1[k'][j'] -= q0d[k'][m'] * gb[m'][j']; C2[k][j] += gb[k][m] * q1s[m][j]
                    for (int k = 0; k < rp; ++k)
                        accumulate(0, k, slot.l, dst_.q0[static_cast<size_t>(k)][static_cast<size_t>(slot.k)], mono, var, Rat(-1));
                    for (int j = 0; j < r; ++j)
                        accumulate(1, slot.k, j, src_.q1[static_cast<size_t>(slot.l)][static_cast<size_t>(j)], mono, var, Rat(1));
                }
            }
        }
        SparseRref constraints(nvars_);
        for (auto& [key, row] : rows) {
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            // merge duplicate variable contributions
            SparseRow merged;
            for (const auto& [var, c] : row) {
                if (!merged.empty() && merged.back().first == var) merged.back().second += c;
                else merged.emplace_back(var, c);
            }
            merged.erase(std::remove_if(merged.begin(), merged.end(),
                                        [](const auto& p) { return p.second == 0; }),
                         merged.end());
            if (!merged.empty()) constraints.add_row(std::move(merged));
        }
        std::vector<SparseRow> kernel = constraints.nullspace();

        // null-homotopy image: ga = q0d * h1 + h2 * q1s, gb = q1d * h2 + h1 * q0s
        homotopy_ = SparseRref(nvars_);
        auto add_image = [&](const PolyMat& ga_img, const PolyMat& gb_img) {
            Morphism g{src_, dst_, ga_img, gb_img};
            SparseRow v = vectorize(g);
            if (!v.empty()) homotopy_.add_row(std::move(v));
        };
        for (int k = 0; k < rp; ++k)
            for (int l = 0; l < r; ++l) {
                // h1[k][l] monomials: degree sbar_dst[k] - s_src[l] - h
                for (const Monomial& m :
                     detail::piece_monomials(dst_.sbar[static_cast<size_t>(k)] - src_.s[static_cast<size_t>(l)] - w.h, w)) {
                    PolyMat h1 = pm_zero(rp, r);
                    Polynomial mono(Rat(1));
                    for (int t = 0; t < kNumVars; ++t)
                        if (m[t]) mono *= Polynomial::variable(t, m[t]);
                    h1[static_cast<size_t>(k)][static_cast<size_t>(l)] = mono;
                    PolyMat ga_img = pm_mul(dst_.q0, h1);
                    PolyMat gb_img = pm_mul(h1, src_.q0);
                    add_image(ga_img, gb_img);
                }
                // h2[k][l] monomials: degree s_dst[k] - sbar_src[l] - h
                for (const Monomial& m :
                     detail::piece_monomials(dst_.s[static_cast<size_t>(k)] - src_.sbar[static_cast<size_t>(l)] - w.h, w)) {
                    PolyMat h2 = pm_zero(rp, r);
                    Polynomial mono(Rat(1));
                    for (int t = 0; t < kNumVars; ++t)
                        if (m[t]) mono *= Polynomial::variable(t, m[t]);
                    h2[static_cast<size_t>(k)][static_cast<size_t>(l)] = mono;
                    PolyMat ga_img = pm_mul(h2, src_.q1);
                    PolyMat gb_img = pm_mul(dst_.q1, h2);
                    add_image(ga_img, gb_img);
                }
            }

        // representatives of kernel / homotopy image
        SparseRref chosen(nvars_);
        for (auto& v : kernel) {
            SparseRow red = v;
            homotopy_.reduce(red);
            if (red.empty()) continue;
            chosen.reduce(red);
            if (red.empty()) continue;
            Rat inv = Rat(1) / red.front().second;
            for (auto& [c, val] : red) val *= inv;
            hom_basis_.push_back(red);
            chosen.add_row(std::move(red));
        }
        dim_ = static_cast<int>(hom_basis_.size());
    }
};

struct HomSpace {
    int dim = 0;
    std::vector<Morphism> basis;
};

inline HomSpace hom_space(const GradedMF& F, const GradedMF& G) {
    HomProblem p(F, G);
    return HomSpace{p.dim(), p.basis()};
}

inline int hom_dim(const GradedMF& F, const GradedMF& G) { return HomProblem(F, G).dim(); }

inline bool is_null_homotopic(const Morphism& g) {
    HomProblem p(g.src, g.dst);
    return p.is_null_homotopic(g);
}

/// dim hom(F, T^n tau^m G) for n in {0,1} and a window of m, derived from the
/// phase bound |phase gap| <= 1 + 2/h plus a safety margin (h-scaled).
struct HomTable {
    std::map<std::pair<int, long long>, int> dims;  // (n, m) -> dim
    long long m_lo = 0, m_hi = 0;

    int at(int n, long long m) const {
        auto it = dims.find({n, m});
        return it == dims.end() ? 0 : it->second;
    }
};

inline HomTable hom_table(const GradedMF& F, const GradedMF& G, long long margin_num = 4) {
    const long long h = F.w.h;
    for (int attempt = 0; attempt < 3; ++attempt) {
        HomTable t;
        // bound in h-scaled units: |h*(phi(tau^m T^n G) - phi(F))| <= h + 2 + margin
        Rat dphi = phase(G) - phase(F);
        long long bound = h + 2 + margin_num;
        bool boundary_bad = false;
        t.m_lo = 0;
        t.m_hi = 0;
        bool first = true;
        for (int n = 0; n <= 1; ++n) {
            // need |h*dphi + 2m + n*h| <= bound
            Rat lo = (Rat(-bound - n * h) - Rat(h) * dphi) / 2;
            Rat hi = (Rat(bound - n * h) - Rat(h) * dphi) / 2;
            long long m_lo = to_ll(rat_floor(lo));
            long long m_hi = to_ll(rat_ceil(hi));
            if (first || m_lo < t.m_lo) t.m_lo = m_lo;
            if (first || m_hi > t.m_hi) t.m_hi = m_hi;
            first = false;
            for (long long m = m_lo; m <= m_hi; ++m) {
                GradedMF target = tau(G, m);
                if (n == 1) target = translate_T(target);
                int d = hom_dim(F, target);
                t.dims[{n, m}] = d;
                if (d != 0 && (m == m_lo || m == m_hi)) boundary_bad = true;
            }
        }
        if (!boundary_bad) return t;
        margin_num *= 4;
    }
    throw MfkError("WindowTooSmall", "nonzero hom dimension at scan boundary");
}

/// Spectrum sp(F, G): multiset of phase gaps phi(tau^m G) - phi(F) with
/// multiplicity dim hom(F, tau^m G).
inline std::vector<std::pair<Rat, int>> spectrum(const GradedMF& F, const GradedMF& G,
                                                 long long margin_num = 4) {
    HomTable t = hom_table(F, G, margin_num);
    std::vector<std::pair<Rat, int>> out;
    for (const auto& [key, d] : t.dims) {
        if (key.first != 0 || d == 0) continue;
        Rat gap = phase(G) + Rat(2 * key.second, F.w.h) - phase(F);
        out.emplace_back(gap, d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Euler pairing chi(F, G) = sum_n (-1)^n dim hom(F, T^n G), folded through
/// T^2 = tau^h onto the hom table.
inline long long euler_chi(const GradedMF& F, const GradedMF& G, long long margin_num = 4) {
    HomTable t = hom_table(F, G, margin_num);
    const long long h = F.w.h;
    long long chi = 0;
    for (const auto& [key, d] : t.dims) {
        auto [n, m] = key;
        if (m % h) continue;  // T^{2k} = tau^{hk}
        chi += (n == 0 ? 1 : -1) * d;
    }
    return chi;
}

/// All of hom(F, T^n G) for n in a contiguous range, via T-folding.
inline std::vector<int> hom_dims_T_range(const GradedMF& F, const GradedMF& G, long long n_lo,
                                         long long n_hi) {
    std::vector<int> out;
    for (long long n = n_lo; n <= n_hi; ++n) out.push_back(hom_dim(F, translate_T_pow(G, n)));
    return out;
}

namespace detail {
inline std::vector<Morphism> iso_candidates(const std::vector<Morphism>& basis) {
    std::vector<Morphism> cands = basis;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            cands.push_back(morphism_add(basis[i], basis[j]));
            cands.push_back(morphism_add(basis[i], morphism_scale(Rat(-1), basis[j])));
        }
    if (basis.size() > 2) {
        Morphism acc = basis[0];
        for (size_t i = 1; i < basis.size(); ++i)
            acc = morphism_add(acc, morphism_scale(Rat(static_cast<long long>(i) + 1), basis[i]));
        cands.push_back(acc);
    }
    return cands;
}
}  // namespace detail

/// Searches for mutually inverse classes between F and G (reduced first).
/// Returns (F->G, G->F) on success.
inline std::optional<std::pair<Morphism, Morphism>> iso_between(const GradedMF& F, const GradedMF& G) {
    GradedMF Fr = reduce(F), Gr = reduce(G);
    if (Fr.rank() != Gr.rank()) return std::nullopt;
    if (Fr.rank() == 0)
        return std::make_pair(Morphism::zero(F, G), Morphism::zero(G, F));
    auto sorted = [](std::vector<long long> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(Fr.s) != sorted(Gr.s) || sorted(Fr.sbar) != sorted(Gr.sbar)) return std::nullopt;

    HomProblem fwd(Fr, Gr);
    if (fwd.dim() == 0) return std::nullopt;
    HomProblem bwd(Gr, Fr);
    if (bwd.dim() == 0) return std::nullopt;
    HomProblem endo_f(Fr, Fr), endo_g(Gr, Gr);
    std::vector<Morphism> bwd_basis = bwd.basis();
    Morphism idF = Morphism::identity(Fr), idG = Morphism::identity(Gr);

    for (const Morphism& b : detail::iso_candidates(fwd.basis())) {
        // solve a in span(bwd) with [a o b] = [id_F]
        std::vector<Morphism> composites;
        composites.reserve(bwd_basis.size());
        for (const auto& a : bwd_basis) composites.push_back(compose(a, b));
        auto coeffs = endo_f.solve_in_span(composites, idF);
        if (!coeffs) continue;
        Morphism a = Morphism::zero(Gr, Fr);
        for (size_t j = 0; j < bwd_basis.size(); ++j)
            if ((*coeffs)[j] != 0) a = morphism_add(a, morphism_scale((*coeffs)[j], bwd_basis[j]));
        // check b o a ~ id_G
        Morphism ba = compose(b, a);
        if (!endo_g.is_null_homotopic(morphism_add(ba, morphism_scale(Rat(-1), idG)))) continue;
        return std::make_pair(b, a);
    }
    return std::nullopt;
}

inline bool is_isomorphic(const GradedMF& F, const GradedMF& G) { return iso_between(F, G).has_value(); }

/// Finds the complement Z with Y ~ X (+) Z, or throws NotASummand.
inline GradedMF split_summand(const GradedMF& Y, const GradedMF& X) {
    GradedMF Yr = reduce(Y), Xr = reduce(X);
    if (Xr.rank() > Yr.rank()) throw MfkError("NotASummand", "candidate summand larger than object");
    HomProblem into(Xr, Yr);
    if (into.dim() == 0) throw MfkError("NotASummand", "no morphisms X -> Y");
    HomProblem back(Yr, Xr);
    if (back.dim() == 0) throw MfkError("NotASummand", "no morphisms Y -> X");
    HomProblem endo_x(Xr, Xr);
    std::vector<Morphism> back_basis = back.basis();
    Morphism idX = Morphism::identity(Xr);
    for (const Morphism& i : detail::iso_candidates(into.basis())) {
        std::vector<Morphism> composites;
        composites.reserve(back_basis.size());
        for (const auto& p : back_basis) composites.push_back(compose(p, i));
        auto coeffs = endo_x.solve_in_span(composites, idX);
        if (!coeffs) continue;
        GradedMF Z = reduce(cone(i).cone);
        if (is_isomorphic(Yr, direct_sum(Xr, Z))) return Z;
    }
    throw MfkError("NotASummand", "no split pair (i, p) found");
}

}  // namespace mfk
