#pragma once

#include "mfk/rational.hpp"

#include <optional>
#include <vector>

namespace mfk {

/// Dense univariate polynomial over Z, coefficient of T^k at index k.
struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly one() { return ZPoly({Int(1)}); }
    /// T^n - T^m in particular via monomial(n) - monomial(m).
    static ZPoly monomial(size_t n, Int coef = Int(1)) {
        std::vector<Int> v(n + 1, Int(0));
        v[n] = std::move(coef);
        return ZPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Int at(size_t k) const { return k < c.size() ? c[k] : Int(0); }

    bool operator==(const ZPoly& o) const { return c == o.c; }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.at(k) + b.at(k);
        return ZPoly(std::move(v));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
        for (size_t k = 0; k < v.size(); ++k) v[k] = a.at(k) - b.at(k);
        return ZPoly(std::move(v));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<Int> v(a.c.size() + b.c.size() - 1, Int(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
        }
        return ZPoly(std::move(v));
    }

    /// Exact division; nullopt if the division leaves a remainder or is not
    /// integral at some step.
    static std::optional<ZPoly> divide_exact(const ZPoly& num, const ZPoly& den) {
        if (den.is_zero()) return std::nullopt;
        ZPoly rem = num;
        if (num.is_zero()) return ZPoly();
        if (num.degree() < den.degree()) return std::nullopt;
        std::vector<Int> q(num.degree() - den.degree() + 1, Int(0));
        const Int& lead = den.c.back();
        for (int k = rem.degree(); k >= den.degree();) {
            Int top = rem.at(k);
            if (top == 0) {
                --k;
                continue;
            }
            if (top % lead != 0) return std::nullopt;
            Int f = top / lead;
            int shift = k - den.degree();
            q[shift] = f;
            for (size_t j = 0; j < den.c.size(); ++j) {
                if (den.c[j] == 0) continue;
                rem.c[j + shift] -= f * den.c[j];
            }
            --k;
        }
        rem.trim();
        if (!rem.is_zero()) return std::nullopt;
        return ZPoly(std::move(q));
    }
};

/// Cyclotomic polynomial Phi_d computed by exact division of T^d - 1 by the
/// Phi_e for proper divisors e of d.
inline ZPoly cyclotomic(long long d) {
    ZPoly num = ZPoly::monomial(static_cast<size_t>(d)) - ZPoly::one();
    for (long long e = 1; e < d; ++e) {
        if (d % e) continue;
        auto q = ZPoly::divide_exact(num, cyclotomic(e));
        if (!q) throw MfkError("Internal", "cyclotomic division failed");
        num = *q;
    }
    return num;
}

}  // namespace mfk
