#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mfk {

/// Error with a machine-readable kind ("ParseError", "NotHomogeneous", ...).
struct MfkError : std::runtime_error {
    std::string kind;
    MfkError(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(Int(num), Int(den));
}

/// Parses "p", "-p" or "p/q" (whitespace not allowed).
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline long long gcd3(long long a, long long b, long long c) {
    return std::gcd(std::gcd(a, b), c);
}

inline Int rat_floor(const Rat& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}
inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }
inline long long to_ll(const Int& v) { return v.convert_to<long long>(); }

}  // namespace mfk
