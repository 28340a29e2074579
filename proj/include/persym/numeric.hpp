#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace persym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned exponent) {
    BigInt v = 1;
    v <<= exponent;
    return v;
}

// 2^exponent for any sign of exponent.
inline Rational pow2q(long exponent) {
    if (exponent >= 0) {
        return Rational(pow2(static_cast<unsigned>(exponent)));
    }
    return Rational(BigInt(1), pow2(static_cast<unsigned>(-exponent)));
}

inline bool is_integral(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline BigInt to_integer(const Rational& r) {
    return boost::multiprecision::numerator(r);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// "p" or "p/q"
inline std::string to_string(const Rational& r) {
    if (is_integral(r)) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(BigInt(text));
    }
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

}  // namespace persym
