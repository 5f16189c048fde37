#pragma once

#include "mfk/poly.hpp"
#include "mfk/zpoly.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace mfk {

/// Outcome of expanding chi_W(T) as a Laurent polynomial.
struct ExponentData {
    std::vector<long long> exponents;  // sorted ascending, with multiplicity
    long long mu = 0;
    long long epsilon = 0;
    long long genus_a0 = 0;
};

enum class ChiVerdict { Regular, NotRegular, MalformedCharacteristic };

struct ChiResult {
    ChiVerdict verdict = ChiVerdict::NotRegular;
    std::optional<ExponentData> data;  // present iff Regular
};

/// Expands T^{-h}(T^h-T^a)(T^h-T^b)(T^h-T^c)/((T^a-1)(T^b-1)(T^c-1)) by exact
/// division in Z[T]. Regular iff the division is exact with all coefficients
/// nonnegative; the coefficient of T^m is the multiplicity of the exponent m.
/// Exact division with a negative coefficient is flagged as
/// MalformedCharacteristic rather than silently classified.
inline ChiResult chi_series(const WeightSystem& w) {
    auto f = [](long long n, long long m) {
        return ZPoly::monomial(static_cast<size_t>(n)) - ZPoly::monomial(static_cast<size_t>(m));
    };
    ZPoly num = f(w.h, w.a) * f(w.h, w.b) * f(w.h, w.c);
    ZPoly den = (ZPoly::monomial(static_cast<size_t>(w.a)) - ZPoly::one()) *
                (ZPoly::monomial(static_cast<size_t>(w.b)) - ZPoly::one()) *
                (ZPoly::monomial(static_cast<size_t>(w.c)) - ZPoly::one());
    auto q = ZPoly::divide_exact(num, den);
    if (!q) return {ChiVerdict::NotRegular, std::nullopt};
    ExponentData d;
    bool malformed = false;
    for (int k = 0; k <= q->degree(); ++k) {
        Int coef = q->at(static_cast<size_t>(k));
        if (coef == 0) continue;
        if (coef < 0) {
            malformed = true;
            break;
        }
        for (Int c = 0; c < coef; ++c) d.exponents.push_back(k - w.h);  // chi = T^{-h} * quotient
    }
    if (malformed) return {ChiVerdict::MalformedCharacteristic, std::nullopt};
    d.mu = static_cast<long long>(d.exponents.size());
    d.epsilon = d.exponents.empty() ? 0 : d.exponents.front();
    d.genus_a0 = std::count(d.exponents.begin(), d.exponents.end(), 0);
    return {ChiVerdict::Regular, d};
}

struct Signature {
    std::vector<long long> alphas;  // sorted ascending, entries >= 2
    long long a0 = 0;

    long long r() const { return static_cast<long long>(alphas.size()); }
};

/// #{(u,v) in Z_{>=0}^2 : p*u + q*v = h}
inline long long pair_count(long long p, long long q, long long h) {
    long long n = 0;
    for (long long u = 0; p * u <= h; ++u)
        if ((h - p * u) % q == 0) ++n;
    return n;
}

/// Signature A_W per its defining multiset construction; entries equal to 1
/// are dropped and the result is sorted ascending.
inline Signature signature(const WeightSystem& w, long long a0 = 0) {
    std::vector<long long> out;
    long long ws[3] = {w.a, w.b, w.c};
    for (long long wi : ws)
        if (w.h % wi != 0) out.push_back(wi);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            long long g = std::gcd(ws[i], ws[j]);
            long long m = pair_count(ws[i], ws[j], w.h);
            for (long long k = 0; k < m - 1; ++k) out.push_back(g);
        }
    out.erase(std::remove(out.begin(), out.end(), 1LL), out.end());
    std::sort(out.begin(), out.end());
    return Signature{out, a0};
}

/// nu_W = sum(alpha_i - 1) + 2(1 - a0) - epsilon.
inline long long dual_rank(const Signature& sig, long long epsilon) {
    long long s = 0;
    for (long long a : sig.alphas) s += a - 1;
    return s + 2 * (1 - sig.a0) - epsilon;
}

struct ClassifiedSystem {
    WeightSystem w;
    ExponentData exponents;
    Signature sig;
    long long nu = 0;
};

/// Exhaustive search for regular systems with epsilon = -1 and a0 = 0,
/// sorted a <= b <= c, c bounded. mu-integrality is checked first; the exact
/// Laurent expansion is the classifier.
inline std::vector<ClassifiedSystem> enumerate_eps_minus1_genus0(long long c_max = 100) {
    std::vector<ClassifiedSystem> out;
    for (long long a = 1; a <= c_max; ++a)
        for (long long b = a; b <= c_max; ++b)
            for (long long c = b; c <= c_max; ++c) {
                long long h = a + b + c + 1;
                if (c >= h) continue;
                if (gcd3(a, b, c) != 1) continue;
                Int mu_num = Int(h - a) * (h - b) * (h - c);
                if (mu_num % (Int(a) * b * c) != 0) continue;
                WeightSystem w(a, b, c, h);
                ChiResult chi = chi_series(w);
                if (chi.verdict != ChiVerdict::Regular) continue;
                if (chi.data->genus_a0 != 0) continue;
                Signature sig = signature(w, 0);
                out.push_back({w, *chi.data, sig, dual_rank(sig, chi.data->epsilon)});
            }
    std::sort(out.begin(), out.end(), [](const ClassifiedSystem& x, const ClassifiedSystem& y) {
        return std::tuple(x.w.h, x.w.a, x.w.b, x.w.c) < std::tuple(y.w.h, y.w.a, y.w.b, y.w.c);
    });
    return out;
}

}  // namespace mfk
