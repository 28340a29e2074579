#include "persym/ypoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace persym {

YPoly::YPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

YPoly::YPoly(std::initializer_list<std::pair<const int, Rational>> terms)
    : YPoly(from_terms(std::map<int, Rational>(terms))) {}

YPoly YPoly::from_terms(const std::map<int, Rational>& terms) {
    std::vector<Rational> c;
    for (const auto& [power, value] : terms) {
        if (power < 0) {
            throw std::invalid_argument("YPoly: negative power");
        }
        if (c.size() <= static_cast<std::size_t>(power)) {
            c.resize(static_cast<std::size_t>(power) + 1);
        }
        c[static_cast<std::size_t>(power)] += value;
    }
    return YPoly(std::move(c));
}

YPoly YPoly::monomial(int power, Rational coeff) { return from_terms({{power, std::move(coeff)}}); }

Rational YPoly::coeff(int power) const {
    if (power < 0 || power > degree()) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(power)];
}

Rational YPoly::operator()(const Rational& y) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * y + *it;
    }
    return acc;
}

Rational YPoly::at_n(int n) const { return (*this)(pow2q(n)); }

YPoly& YPoly::operator+=(const YPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    trim();
    return *this;
}

YPoly& YPoly::operator-=(const YPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    trim();
    return *this;
}

YPoly& YPoly::operator*=(const Rational& s) {
    for (auto& c : coeffs_) {
        c *= s;
    }
    trim();
    return *this;
}

YPoly operator*(const YPoly& a, const YPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return YPoly(std::move(c));
}

std::string YPoly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (int p = degree(); p >= 0; --p) {
        const Rational& c = coeffs_[static_cast<std::size_t>(p)];
        if (c == 0) {
            continue;
        }
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = mag == 1 && p > 0;
        if (!unit) {
            out += persym::to_string(mag);
        }
        if (p > 0) {
            out += unit ? "Y" : "*Y";
            if (p > 1) {
                out += "^" + std::to_string(p);
            }
        }
    }
    return out;
}

void YPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

}  // namespace persym
