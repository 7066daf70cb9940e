#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "ckm/errors.hpp"

namespace ckm {

using Int = boost::multiprecision::cpp_int;
// Always reduced, positive denominator (cpp_rational maintains both).
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw ParseError("bad rational literal: " + s);
    }
}

inline Rational frac_mod1(const Rational& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    Rational f = x - Rational(q);
    if (f < 0) f += 1;
    return f;
}

} // namespace ckm
