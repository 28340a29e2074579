#include "persym/exact_fit.hpp"

#include "persym/errors.hpp"

#include <algorithm>

namespace persym {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw StructuralError("RationalMatrix: ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

std::vector<Rational> RationalMatrix::multiply(std::span<const Rational> x) const {
    if (x.size() != cols_) {
        throw StructuralError("RationalMatrix: dimension mismatch");
    }
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != 0) {
                y[r] += (*this)(r, c) * x[c];
            }
        }
    }
    return y;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::unique: return "unique";
        case SolveStatus::underdetermined: return "underdetermined";
        case SolveStatus::inconsistent: return "inconsistent";
    }
    return "unknown";
}

SolveReport solve_exact(const RationalMatrix& a, std::span<const Rational> b) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    if (b.size() != rows) {
        throw StructuralError("solve_exact: right-hand side has wrong length");
    }

    // [A | b | I]; the identity block records which row combination produced each row
    const std::size_t width = cols + 1 + rows;
    RationalMatrix w(rows, width);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            w(r, c) = a(r, c);
        }
        w(r, cols) = b[r];
        w(r, cols + 1 + r) = 1;
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t found = pivot_row;
        while (found < rows && w(found, c) == 0) {
            ++found;
        }
        if (found == rows) {
            continue;
        }
        if (found != pivot_row) {
            for (std::size_t j = 0; j < width; ++j) {
                std::swap(w(found, j), w(pivot_row, j));
            }
        }
        const Rational inv = 1 / w(pivot_row, c);
        for (std::size_t j = 0; j < width; ++j) {
            if (w(pivot_row, j) != 0) {
                w(pivot_row, j) *= inv;
            }
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || w(r, c) == 0) {
                continue;
            }
            const Rational factor = w(r, c);
            for (std::size_t j = 0; j < width; ++j) {
                if (w(pivot_row, j) != 0) {
                    w(r, j) -= factor * w(pivot_row, j);
                }
            }
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }

    SolveReport report;
    report.rows = rows;
    report.cols = cols;
    report.rank = pivot_cols.size();

    for (std::size_t r = report.rank; r < rows; ++r) {
        if (w(r, cols) != 0) {
            report.status = SolveStatus::inconsistent;
            report.certificate.resize(rows);
            for (std::size_t j = 0; j < rows; ++j) {
                report.certificate[j] = w(r, cols + 1 + j);
            }
            return report;
        }
    }

    report.solution.assign(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        report.solution[pivot_cols[i]] = w(i, cols);
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            v[pivot_cols[i]] = -w(i, f);
        }
        report.nullspace.push_back(std::move(v));
    }
    report.status = report.nullspace.empty() ? SolveStatus::unique : SolveStatus::underdetermined;
    return report;
}

FitResult fit_rank_polynomial(std::span<const FitSample> samples, int degree_bound,
                              std::span<const Rational> forced_roots, std::optional<Rational> leading) {
    const int quotient_degree = degree_bound - static_cast<int>(forced_roots.size());
    if (quotient_degree < 0) {
        throw StructuralError("more forced roots than the degree bound allows");
    }

    YPoly root_factor = YPoly::monomial(0);
    for (const auto& r : forced_roots) {
        root_factor = root_factor * YPoly({{1, Rational(1)}, {0, Rational(-r)}});
    }

    const int unknowns = quotient_degree + (leading ? 0 : 1);
    RationalMatrix a(samples.size(), static_cast<std::size_t>(unknowns));
    std::vector<Rational> b(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Rational y = pow2q(samples[s].n);
        const Rational f = root_factor(y);
        Rational power = 1;
        for (int j = 0; j < unknowns; ++j) {
            a(s, static_cast<std::size_t>(j)) = f * power;
            power *= y;
        }
        b[s] = samples[s].value;
        if (leading) {
            b[s] -= f * *leading * pow2q(static_cast<long>(samples[s].n) * quotient_degree);
        }
    }

    FitResult result;
    result.report = solve_exact(a, b);
    if (result.report.status == SolveStatus::unique) {
        std::vector<Rational> q(result.report.solution);
        if (leading) {
            q.push_back(*leading);
        }
        result.poly = root_factor * YPoly(std::move(q));
    }
    return result;
}

Rank6Derivation derive_rank6_polynomial(int k) {
    const YPoly roots = YPoly({{1, Rational(1)}, {0, Rational(-1)}}) * YPoly({{1, Rational(1)}, {0, Rational(-2)}}) *
                        YPoly({{1, Rational(1)}, {0, Rational(-4)}});
    Rank6Derivation d;
    d.k = k;
    d.system = RationalMatrix(3, 3);
    d.rhs.resize(3);
    for (int n = 3; n <= 5; ++n) {
        const auto row = static_cast<std::size_t>(n - 3);
        const Rational y = pow2q(n);
        d.system(row, 0) = y * y;
        d.system(row, 1) = y;
        d.system(row, 2) = 1;
        d.rhs[row] = Rational(rank6_fixed_n(n, k)) / roots(y) - 127 * y * y * y;
    }
    d.report = solve_exact(d.system, d.rhs);
    if (d.report.status != SolveStatus::unique) {
        throw ConsistencyError("rank-6 factor system is not uniquely solvable");
    }
    d.alpha = d.report.solution[0];
    d.beta = d.report.solution[1];
    d.gamma = d.report.solution[2];
    d.poly = roots * YPoly(std::vector<Rational>{d.gamma, d.beta, d.alpha, Rational(127)});
    return d;
}

Rational MomentSystemSolution::coefficient(int rank_index, int power) const {
    if (auto it = coefficients.find({rank_index, power}); it != coefficients.end()) {
        return it->second;
    }
    if (static_cast<std::size_t>(rank_index) < polynomials.size()) {
        return polynomials[static_cast<std::size_t>(rank_index)].coeff(power);
    }
    throw StructuralError("coefficient not available");
}

namespace {

YPoly leading_term(int rank_index, int k) {
    if (rank_index == k) {
        return YPoly::monomial(k + 1);
    }
    return YPoly::monomial(rank_index, Rational(pow2(static_cast<unsigned>(rank_index + 1)) - 1));
}

}  // namespace

MomentSystemSolution solve_moment_system(int k) {
    if (k < 1) {
        throw StructuralError("k must be at least 1");
    }
    MomentSystemSolution sol;
    sol.k = k;
    sol.first_unknown_rank = std::min(7, k);

    std::vector<YPoly> known;
    for (int i = 0; i < sol.first_unknown_rank; ++i) {
        known.push_back(gamma_poly(i, k).poly);
    }
    for (int j = sol.first_unknown_rank; j <= k; ++j) {
        const int top = j == k ? k : j - 1;
        for (int e = 0; e <= top; ++e) {
            sol.unknowns.push_back({j, e});
        }
    }

    const int max_power = k + 1;
    const std::size_t eq_per_identity = static_cast<std::size_t>(max_power) + 1;
    sol.equations = 3 * eq_per_identity;
    RationalMatrix a(sol.equations, sol.unknowns.size());
    std::vector<Rational> b(sol.equations);

    for (int q = 0; q <= 2; ++q) {
        const YPoly rhs = k == 9 ? k9_weighted_moment_rhs(q) : weighted_moment_rhs(q, k);
        auto weight = [&](int rank) { return pow2q(static_cast<long>(q) * (k - rank)); };
        YPoly residual = rhs;
        for (int i = 0; i < sol.first_unknown_rank; ++i) {
            residual -= known[static_cast<std::size_t>(i)] * weight(i);
        }
        for (int j = sol.first_unknown_rank; j <= k; ++j) {
            residual -= leading_term(j, k) * weight(j);
        }
        for (int p = 0; p <= max_power; ++p) {
            const std::size_t row = static_cast<std::size_t>(q) * eq_per_identity + static_cast<std::size_t>(p);
            b[row] = residual.coeff(p);
            for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
                if (sol.unknowns[u].power == p) {
                    a(row, u) = weight(sol.unknowns[u].rank_index);
                }
            }
        }
    }

    sol.report = solve_exact(a, b);
    sol.consistent = sol.report.status != SolveStatus::inconsistent;
    sol.unique = sol.report.status == SolveStatus::unique;
    if (sol.unique) {
        std::vector<std::map<int, Rational>> terms(static_cast<std::size_t>(k - sol.first_unknown_rank + 1));
        for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
            const auto& un = sol.unknowns[u];
            sol.coefficients[{un.rank_index, un.power}] = sol.report.solution[u];
            terms[static_cast<std::size_t>(un.rank_index - sol.first_unknown_rank)][un.power] = sol.report.solution[u];
        }
        sol.polynomials = known;
        for (int j = sol.first_unknown_rank; j <= k; ++j) {
            sol.polynomials.push_back(leading_term(j, k) +
                                      YPoly::from_terms(terms[static_cast<std::size_t>(j - sol.first_unknown_rank)]));
        }
    }
    return sol;
}

}  // namespace persym
