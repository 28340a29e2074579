#pragma once

#include "persym/numeric.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace persym {

/// Polynomial in Y = 2^n with exact rational coefficients, stored densely by power of Y.
/// Trailing zero coefficients are never stored, so the zero polynomial has no coefficients.
class YPoly {
public:
    YPoly() = default;
    explicit YPoly(std::vector<Rational> coeffs);
    /// Sparse form {power: coefficient}.
    YPoly(std::initializer_list<std::pair<const int, Rational>> terms);
    static YPoly from_terms(const std::map<int, Rational>& terms);
    static YPoly monomial(int power, Rational coeff = 1);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Rational coeff(int power) const;
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    Rational operator()(const Rational& y) const;
    /// Value at Y = 2^n.
    Rational at_n(int n) const;

    YPoly& operator+=(const YPoly& o);
    YPoly& operator-=(const YPoly& o);
    YPoly& operator*=(const Rational& s);
    friend YPoly operator+(YPoly a, const YPoly& b) { return a += b; }
    friend YPoly operator-(YPoly a, const YPoly& b) { return a -= b; }
    friend YPoly operator*(YPoly a, const Rational& s) { return a *= s; }
    friend YPoly operator*(const YPoly& a, const YPoly& b);

    bool operator==(const YPoly&) const = default;

    /// e.g. "127*Y^6 - 189*Y^5 + 114688"
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

}  // namespace persym
