#pragma once

#include "mfk/linalg.hpp"
#include "mfk/weights.hpp"
#include "mfk/zpoly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace mfk {

enum class QuiverVariant { W, T, Prime };

inline const char* variant_name(QuiverVariant v) {
    switch (v) {
        case QuiverVariant::W: return "W";
        case QuiverVariant::T: return "T";
        default: return "prime";
    }
}

struct Arrow {
    int source = 0, target = 0;
    int d = 1;  // +1 solid, -1 dotted
};

/// Quiver attached to a unitriangular C matrix: -C_{ij} solid arrows and
/// +C_{ij} dotted arrows from i to j.
struct QuiverSpec {
    QuiverVariant variant = QuiverVariant::W;
    std::vector<std::string> vertices;  // ordered
    std::vector<Arrow> arrows;
    ZMat C;    // unitriangular
    ZMat chi;  // C^{-1}
};

/// Vertex order making chi unitriangular: per-arm descending j, then the
/// hub v1bar, v1, v0. The prime variant needs v1bar before the arms.
inline std::vector<std::string> vertex_order(const Signature& sig, QuiverVariant variant) {
    std::vector<std::string> v;
    if (variant == QuiverVariant::Prime) v.push_back("v1bar");
    for (size_t i = 0; i < sig.alphas.size(); ++i)
        for (long long j = sig.alphas[i]; j >= 2; --j)
            v.push_back("v_" + std::to_string(i + 1) + "_" + std::to_string(j));
    if (variant != QuiverVariant::Prime) v.push_back("v1bar");
    v.push_back("v1");
    v.push_back("v0");
    return v;
}

/// The C matrix of Delta_W, Delta_W^T or Delta'_W: common arm chains and
/// v1 -> v0, plus the variant-specific hub entries.
inline QuiverSpec quiver_variant(const Signature& sig, QuiverVariant variant) {
    QuiverSpec q;
    q.variant = variant;
    q.vertices = vertex_order(sig, variant);
    int n = static_cast<int>(q.vertices.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[q.vertices[static_cast<size_t>(i)]] = i;
    q.C = ZMat::identity(n);
    auto set = [&](const std::string& a, const std::string& b, long long val) {
        q.C.at(idx.at(a), idx.at(b)) = val;
    };
    for (size_t i = 0; i < sig.alphas.size(); ++i) {
        std::string arm = "v_" + std::to_string(i + 1) + "_";
        for (long long j = sig.alphas[i]; j >= 3; --j)
            set(arm + std::to_string(j), arm + std::to_string(j - 1), -1);
        switch (variant) {
            case QuiverVariant::W:
                set(arm + "2", "v1bar", -1);
                set(arm + "2", "v1", -1);
                break;
            case QuiverVariant::T:
                set(arm + "2", "v1bar", -1);
                set(arm + "2", "v1", 1);
                break;
            case QuiverVariant::Prime:
                set("v1bar", arm + "2", -1);
                set(arm + "2", "v1", -1);
                break;
        }
    }
    set("v1", "v0", -1);
    set("v1bar", "v1", variant == QuiverVariant::T ? -2 : 2);
    QMat inv = q.C.to_q().inverse();
    auto chi = ZMat::from_q(inv);
    if (!chi) throw MfkError("Internal", "non-integral inverse of unitriangular matrix");
    q.chi = *chi;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int c = q.C.at(i, j);
            if (i == j || c == 0) continue;
            long long cnt = to_ll(c < 0 ? -c : c);
            for (long long k = 0; k < cnt; ++k) q.arrows.push_back({i, j, c < 0 ? 1 : -1});
        }
    return q;
}

/// Euler matrix of the strongly exceptional collection
/// (arms descending, V1bar, TV1, TV0) from the closed-form hom dimensions;
/// coincides with the chi of Delta_W^T.
inline ZMat chi_from_hom_formulas(const Signature& sig) {
    std::vector<std::string> order = vertex_order(sig, QuiverVariant::T);
    int n = static_cast<int>(order.size());
    ZMat chi(n, n);
    auto arm_of = [&](const std::string& v) -> int {
        if (v.size() > 2 && v[0] == 'v' && v[1] == '_') return std::stoi(v.substr(2, v.find('_', 2) - 2));
        return -1;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const std::string &va = order[static_cast<size_t>(a)], &vb = order[static_cast<size_t>(b)];
            long long val = 0;
            if (a == b) val = 1;
            else if (arm_of(va) >= 0) {
                int ia = arm_of(va);
                long long ja = std::stoll(va.substr(va.rfind('_') + 1));
                if (arm_of(vb) == ia) {
                    long long jb = std::stoll(vb.substr(vb.rfind('_') + 1));
                    val = ja > jb ? 1 : 0;  // hom(V_{i,j}, V_{i,j'}) = 1 for j >= j'
                } else if (arm_of(vb) >= 0) val = 0;
                else val = 1;  // hom(V_{i,j}, V1bar) = hom(V_{i,j}, T V1) = hom(V_{i,j}, T V0) = 1
            } else if (va == "v1bar") {
                if (vb == "v1" || vb == "v0") val = 2;  // hom(V1bar, T V1) = hom(V1bar, T V0) = 2
                else val = 0;
            } else if (va == "v1") {
                val = vb == "v0" ? 1 : 0;
            } else {
                val = 0;  // v0 row
            }
            chi.at(a, b) = val;
        }
    return chi;
}

struct CoxeterData {
    ZMat matrix;                           // -C * C^{-T}
    long long order = -1;                  // smallest k with c^k = Id (within cap)
    std::vector<std::pair<long long, long long>> eigen_angles;  // reduced fractions m/d, multiset
    long long n_pos = 0, n_zero = 0, n_neg = 0;                 // inertia of chi + chi^T
    ZPoly char_polynomial;
    std::vector<std::pair<long long, long long>> cyclotomic_factors;  // (d, multiplicity)
};

/// Number of positive roots of a real-rooted integer polynomial, by exact
/// Descartes count (valid since all roots are real for symmetric matrices).
inline long long descartes_positive_roots(const ZPoly& p) {
    long long changes = 0;
    int last = 0;
    for (const Int& c : p.c) {
        if (c == 0) continue;
        int s = c > 0 ? 1 : -1;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline CoxeterData coxeter(const ZMat& C, long long order_cap = 1000) {
    CoxeterData out;
    QMat c_q = -(C.to_q() * C.transpose().to_q().inverse());
    auto c = ZMat::from_q(c_q);
    if (!c) throw MfkError("NonInvertibleC", "Coxeter matrix is not integral");
    out.matrix = *c;
    int n = C.n;
    ZMat id = ZMat::identity(n), pow = *c;
    for (long long k = 1; k <= order_cap; ++k) {
        if (pow == id) {
            out.order = k;
            break;
        }
        pow = pow * *c;
    }
    out.char_polynomial = char_poly(*c);
    // factor into cyclotomics; eigenvalues are roots of unity when the order
    // is finite
    ZPoly rest = out.char_polynomial;
    for (long long d = 1; rest.degree() > 0 && d <= std::max<long long>(out.order, 1) * 2 + 4; ++d) {
        ZPoly phi = cyclotomic(d);
        long long mult = 0;
        for (;;) {
            auto q = ZPoly::divide_exact(rest, phi);
            if (!q) break;
            rest = *q;
            ++mult;
        }
        if (mult > 0) out.cyclotomic_factors.emplace_back(d, mult);
    }
    if (rest.degree() > 0)
        throw MfkError("NonCyclotomic", "characteristic polynomial has a non-cyclotomic factor");
    for (const auto& [d, mult] : out.cyclotomic_factors)
        for (long long j = d == 1 ? 0 : 1; j <= (d == 1 ? 0 : d - 1); ++j) {
            if (d > 1 && std::gcd(j, d) != 1) continue;
            for (long long m = 0; m < mult; ++m) out.eigen_angles.emplace_back(j, d);
        }
    std::sort(out.eigen_angles.begin(), out.eigen_angles.end(),
              [](const auto& a, const auto& b) { return Rat(a.first, a.second) < Rat(b.first, b.second); });

    // inertia of chi + chi^T where chi = C^{-1}
    QMat chi = C.to_q().inverse();
    QMat sym_q = chi + chi.transpose();
    // clear denominators (positive scaling keeps the signature)
    Int lcm = 1;
    for (const Rat& v : sym_q.a) lcm = boost::multiprecision::lcm(lcm, denominator(v));
    ZMat sym(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat scaled = sym_q.at(i, j) * Rat(lcm);
            sym.at(i, j) = numerator(scaled);
        }
    ZPoly p = char_poly(sym);
    long long zero = 0;
    while (zero <= p.degree() && p.at(static_cast<size_t>(zero)) == 0) ++zero;
    out.n_zero = zero;
    out.n_pos = descartes_positive_roots(p);
    out.n_neg = n - out.n_pos - out.n_zero;
    return out;
}

/// Exponents of W reduced mod 1 as fractions m/h, sorted with multiplicity.
inline std::vector<std::pair<long long, long long>> exponent_angles(const ClassifiedSystem& s) {
    std::vector<std::pair<long long, long long>> out;
    for (long long m : s.exponents.exponents) {
        long long mm = ((m % s.w.h) + s.w.h) % s.w.h;
        long long g = std::gcd(mm, s.w.h);
        if (mm == 0) out.emplace_back(0, 1);
        else out.emplace_back(mm / g, s.w.h / g);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return Rat(a.first, a.second) < Rat(b.first, b.second); });
    return out;
}

struct DualityPairing {
    std::vector<std::pair<std::string, std::string>> pairs;  // (case, partner)
    bool involution = true;
    std::vector<std::string> issues;
};

inline std::string case_id_of(const WeightSystem& w) {
    return "w-" + std::to_string(w.a) + "-" + std::to_string(w.b) + "-" + std::to_string(w.c) + "-" +
           std::to_string(w.h);
}

/// Strange-duality scan over the fourteen r = 3 systems: W pairs with the
/// system W' whose exponents (mod 1) match the Coxeter eigen-angles of
/// Delta_W and whose rank mu equals nu_W.
inline DualityPairing duality_scan(const std::vector<ClassifiedSystem>& systems) {
    DualityPairing out;
    std::vector<const ClassifiedSystem*> exceptional;
    for (const auto& s : systems)
        if (s.sig.r() == 3) exceptional.push_back(&s);
    std::map<std::string, std::string> partner;
    for (const ClassifiedSystem* s : exceptional) {
        CoxeterData cox = coxeter(quiver_variant(s->sig, QuiverVariant::W).C, 2 * s->w.h + 2);
        std::vector<std::string> matches;
        for (const ClassifiedSystem* t : exceptional) {
            if (t->exponents.mu != s->nu) continue;
            if (exponent_angles(*t) == cox.eigen_angles) matches.push_back(case_id_of(t->w));
        }
        if (matches.empty()) {
            out.issues.push_back("NoDualFound for " + case_id_of(s->w));
            continue;
        }
        if (matches.size() > 1) {
            out.issues.push_back("AmbiguousDual for " + case_id_of(s->w));
            continue;
        }
        partner[case_id_of(s->w)] = matches[0];
        out.pairs.emplace_back(case_id_of(s->w), matches[0]);
    }
    for (const auto& [a, b] : partner) {
        auto it = partner.find(b);
        if (it == partner.end() || it->second != a) {
            out.involution = false;
            out.issues.push_back("pairing not involutive at " + a);
        }
    }
    if (partner.size() != exceptional.size()) out.involution = false;
    return out;
}

}  // namespace mfk
