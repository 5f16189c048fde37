#pragma once

#include "mfk/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfk {

/// Weight system (a,b,c;h). Also serves as the grading context for polynomials.
struct WeightSystem {
    long long a = 0, b = 0, c = 0, h = 0;

    WeightSystem() = default;
    WeightSystem(long long a_, long long b_, long long c_, long long h_) : a(a_), b(b_), c(c_), h(h_) {
        if (a <= 0 || b <= 0 || c <= 0 || h <= 0)
            throw MfkError("InvalidWeightSystem", "weights must be positive");
        if (a >= h || b >= h || c >= h)
            throw MfkError("InvalidWeightSystem", "weights must be less than h");
        if (gcd3(a, b, c) != 1)
            throw MfkError("InvalidWeightSystem", "gcd(a,b,c) must be 1");
    }

    long long epsilon() const { return a + b + c - h; }
    bool operator==(const WeightSystem& o) const = default;
};

/// Exponent vector over x, y, z, l1, l2 and the two degree-zero units
/// i (i^2 = -1) and u (u^2 = -l1). i and u only ever carry exponent 0 or 1;
/// multiplication reduces higher powers.
struct Monomial {
    std::array<uint16_t, 7> e{};  // x, y, z, l1, l2, i, u

    uint16_t& operator[](int k) { return e[k]; }
    uint16_t operator[](int k) const { return e[k]; }

    bool operator==(const Monomial& o) const = default;
    bool operator<(const Monomial& o) const { return e < o.e; }

    bool is_one() const { return e == std::array<uint16_t, 7>{}; }
    bool has_params() const { return e[3] || e[4] || e[5] || e[6]; }

    /// Weighted degree numerator: h * (Euler degree) = 2(a ex + b ey + c ez).
    long long degree_num(const WeightSystem& w) const {
        return 2 * (w.a * e[0] + w.b * e[1] + w.c * e[2]);
    }
};

static constexpr int kNumVars = 7;
inline const char* kVarNames[kNumVars] = {"x", "y", "z", "l1", "l2", "i", "u"};

struct MonomialDescending {
    bool operator()(const Monomial& a, const Monomial& b) const { return b < a; }
};

/// Exact multivariate polynomial over Q with the monomial reductions above.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rat, MonomialDescending>;

    Polynomial() = default;
    explicit Polynomial(const Rat& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    static Polynomial variable(int k, int exp = 1) {
        Polynomial p;
        Monomial m;
        m[k] = static_cast<uint16_t>(exp);
        Rat c(1);
        reduce_units(m, c);
        p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (int k = 0; k < kNumVars; ++k) m.e[k] = static_cast<uint16_t>(m.e[k] + mb.e[k]);
                Rat c = ca * cb;
                reduce_units(m, c);
                r.add_term(m, c);
            }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator*(const Rat& c, const Polynomial& p) {
        Polynomial r;
        if (c == 0) return r;
        for (const auto& [m, cc] : p.terms_) r.terms_[m] = c * cc;
        return r;
    }

    bool has_params() const {
        for (const auto& [m, c] : terms_)
            if (m.has_params()) return true;
        return false;
    }
    bool has_unit_i() const {
        for (const auto& [m, c] : terms_)
            if (m[5]) return true;
        return false;
    }

    /// Euler degree of a homogeneous polynomial, as an h-scaled numerator.
    /// Degree 2 (the degree of f_W) corresponds to numerator 2h.
    long long euler_degree_num(const WeightSystem& w) const {
        if (terms_.empty()) throw MfkError("ZeroPolynomial", "euler degree of zero polynomial");
        long long d = terms_.begin()->first.degree_num(w);
        for (const auto& [m, c] : terms_)
            if (m.degree_num(w) != d)
                throw MfkError("NotHomogeneous", "mixed degrees " + std::to_string(d) + " and " +
                                                     std::to_string(m.degree_num(w)));
        return d;
    }
    bool is_homogeneous_of(const WeightSystem& w, long long num) const {
        for (const auto& [m, c] : terms_)
            if (m.degree_num(w) != num) return false;
        return true;
    }

    /// Substitutes parameters. Keys: "l1", "l2", "u". The unit u must be
    /// specialized together with (and before) l1, with u^2 = -l1.
    Polynomial specialize(const std::map<std::string, Rat>& values) const;

    std::string to_string() const;
    static Polynomial parse(const std::string& text);

  private:
    TermMap terms_;

    void add_term(const Monomial& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static void reduce_units(Monomial& m, Rat& c) {
        while (m.e[5] >= 2) {  // i^2 = -1
            m.e[5] = static_cast<uint16_t>(m.e[5] - 2);
            c = -c;
        }
        while (m.e[6] >= 2) {  // u^2 = -l1
            m.e[6] = static_cast<uint16_t>(m.e[6] - 2);
            m.e[3] = static_cast<uint16_t>(m.e[3] + 1);
            c = -c;
        }
    }

    friend class PolyParser;
};

inline Polynomial Polynomial::specialize(const std::map<std::string, Rat>& values) const {
    auto val_of = [&](const char* name) -> const Rat* {
        auto it = values.find(name);
        return it == values.end() ? nullptr : &it->second;
    };
    const Rat* v1 = val_of("l1");
    const Rat* v2 = val_of("l2");
    const Rat* vu = val_of("u");
    if (vu && v1 && (*vu) * (*vu) != -(*v1))
        throw MfkError("InconsistentParameter", "u^2 must equal -l1");
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        if (m[6] && !vu) throw MfkError("MissingParameter", "u occurs but is not assigned");
        if (m[3] && !v1) throw MfkError("MissingParameter", "l1 occurs but is not assigned");
        if (m[4] && !v2) throw MfkError("MissingParameter", "l2 occurs but is not assigned");
        Rat coef = c;
        for (uint16_t k = 0; k < m[6]; ++k) coef *= *vu;
        for (uint16_t k = 0; k < m[3]; ++k) coef *= *v1;
        for (uint16_t k = 0; k < m[4]; ++k) coef *= *v2;
        Monomial mm = m;
        mm.e[3] = mm.e[4] = mm.e[6] = 0;
        r.add_term(mm, coef);
    }
    return r;
}

inline std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? "-" : "+";
        }
        std::string body;
        for (int k = 0; k < kNumVars; ++k) {
            if (m.e[k] == 0) continue;
            if (!body.empty()) body += "*";
            body += kVarNames[k];
            if (m.e[k] > 1) body += "^" + std::to_string(m.e[k]);
        }
        if (body.empty()) {
            out += rat_to_string(ac);
        } else {
            if (ac != 1) out += rat_to_string(ac) + "*";
            out += body;
        }
    }
    return out;
}

/// Recursive-descent parser for the polynomial grammar. Canonical output of
/// to_string is always accepted; parenthesized factors with optional powers
/// are accepted as input sugar ("y*(y-l1*x^2)^2").
class PolyParser {
  public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    Polynomial parse() {
        Polynomial p = parse_expr();
        skip_ws();
        if (pos_ != s_.size())
            throw MfkError("ParseError", "trailing input at offset " + std::to_string(pos_) + " in '" + s_ + "'");
        return p;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial parse_expr() {
        Polynomial acc;
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        acc = parse_term(neg);
        for (;;) {
            if (eat('+')) acc += parse_term(false);
            else if (eat('-')) acc += parse_term(true);
            else break;
        }
        return acc;
    }

    Polynomial parse_term(bool neg) {
        Polynomial p = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                p *= parse_factor();
                continue;
            }
            // implicit multiplication before a variable or '('
            if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
                p *= parse_factor();
                continue;
            }
            break;
        }
        return neg ? -p : p;
    }

    Polynomial parse_factor() {
        skip_ws();
        if (pos_ >= s_.size()) throw MfkError("ParseError", "unexpected end of input in '" + s_ + "'");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = parse_expr();
            if (!eat(')')) throw MfkError("ParseError", "missing ')' in '" + s_ + "'");
            long long e = parse_opt_exponent();
            Polynomial r(Rat(1));
            for (long long k = 0; k < e; ++k) r *= inner;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat num = parse_number();
            return Polynomial(num);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int var = parse_var();
            long long e = parse_opt_exponent();
            return Polynomial::variable(var, static_cast<int>(e));
        }
        throw MfkError("ParseError",
                       std::string("unexpected character '") + c + "' at offset " + std::to_string(pos_));
    }

    Rat parse_number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Int num(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '/') {
            size_t save = pos_;
            ++pos_;
            size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (dstart == pos_) {
                pos_ = save;  // not a fraction
                return Rat(num);
            }
            Int den(s_.substr(dstart, pos_ - dstart));
            if (den == 0) throw MfkError("ParseError", "zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    int parse_var() {
        for (int k : {3, 4, 0, 1, 2, 5, 6}) {  // l1/l2 first (longest match)
            std::string name = kVarNames[k];
            if (s_.compare(pos_, name.size(), name) == 0) {
                pos_ += name.size();
                return k;
            }
        }
        throw MfkError("ParseError",
                       "unknown variable at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    long long parse_opt_exponent() {
        if (!eat('^')) return 1;
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw MfkError("ParseError", "missing exponent");
        return std::stoll(s_.substr(start, pos_ - start));
    }
};

inline Polynomial Polynomial::parse(const std::string& text) { return PolyParser(text).parse(); }

inline Polynomial poly(const std::string& text) { return Polynomial::parse(text); }

/// All monomials x^i y^j z^k with h-scaled degree numerator d (parameters
/// excluded), in descending canonical order. Empty if d is odd or negative.
inline std::vector<Polynomial> graded_piece_basis(long long d, const WeightSystem& w) {
    std::vector<Polynomial> out;
    if (d < 0 || d % 2 != 0) return out;
    long long weight = d / 2;  // a*i + b*j + c*k = weight
    std::vector<Monomial> mons;
    for (long long i = 0; i * w.a <= weight; ++i)
        for (long long j = 0; i * w.a + j * w.b <= weight; ++j) {
            long long rem = weight - i * w.a - j * w.b;
            if (rem % w.c) continue;
            Monomial m;
            m[0] = static_cast<uint16_t>(i);
            m[1] = static_cast<uint16_t>(j);
            m[2] = static_cast<uint16_t>(rem / w.c);
            mons.push_back(m);
        }
    std::sort(mons.begin(), mons.end(), MonomialDescending{});
    for (const auto& m : mons) {
        Polynomial p;
        p = Polynomial(Rat(1));
        Polynomial q = Polynomial::variable(0, m[0]) * Polynomial::variable(1, m[1]) *
                       Polynomial::variable(2, m[2]);
        out.push_back(q);
    }
    return out;
}

}  // namespace mfk
