#pragma once

#include "persym/closed_forms.hpp"
#include "persym/numeric.hpp"
#include "persym/ypoly.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace persym {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Rational> multiply(std::span<const Rational> x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

enum class SolveStatus { unique, underdetermined, inconsistent };

const char* to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::inconsistent;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank = 0;
    /// A particular solution (free unknowns set to zero); empty when inconsistent.
    std::vector<Rational> solution;
    /// Basis of the solution space of A x = 0; its size is cols - rank.
    std::vector<std::vector<Rational>> nullspace;
    /// When inconsistent: y with y A = 0 and y b != 0.
    std::vector<Rational> certificate;
};

/// Exact Gauss-Jordan elimination of A x = b over the rationals.
SolveReport solve_exact(const RationalMatrix& a, std::span<const Rational> b);

struct FitSample {
    int n = 0;
    Rational value;
};

struct FitResult {
    SolveReport report;
    /// Set only when the samples determine the polynomial uniquely.
    std::optional<YPoly> poly;
};

/// Fits P(Y) of degree <= degree_bound through (2^n, value) for every sample, with
/// P(r) = 0 for each forced root r. Optionally pins the coefficient of Y^degree_bound.
FitResult fit_rank_polynomial(std::span<const FitSample> samples, int degree_bound,
                              std::span<const Rational> forced_roots = {},
                              std::optional<Rational> leading = std::nullopt);

/// Γ_6 = (Y-1)(Y-2)(Y-4)(127 Y^3 + alpha Y^2 + beta Y + gamma) pinned by the fixed-n values at
/// n = 3, 4, 5.
struct Rank6Derivation {
    int k = 0;
    RationalMatrix system;
    std::vector<Rational> rhs;
    SolveReport report;
    Rational alpha;
    Rational beta;
    Rational gamma;
    YPoly poly;
};

Rank6Derivation derive_rank6_polynomial(int k);

struct MomentUnknown {
    int rank_index = 0;
    int power = 0;
};

/// The higher-rank polynomials recovered from the q = 0, 1, 2 weighted moment identities.
struct MomentSystemSolution {
    int k = 0;
    /// Ranks below this index come from gamma_poly; ranks from here to k are solved for.
    int first_unknown_rank = 0;
    std::vector<MomentUnknown> unknowns;
    std::size_t equations = 0;
    SolveReport report;
    bool consistent = false;
    bool unique = false;
    /// (rank, power of Y) -> coefficient, for solved coefficients. Filled when unique.
    std::map<std::pair<int, int>, Rational> coefficients;
    /// Γ_0..Γ_k. Filled when unique.
    std::vector<YPoly> polynomials;

    Rational coefficient(int rank_index, int power) const;
};

/// Solves for Γ_j, j >= min(7, k), with leading terms (2^(j+1)-1) Y^j for j < k and Y^(k+1)
/// for j = k; every lower coefficient of those ranks (including Y^k of Γ_k) is unknown.
MomentSystemSolution solve_moment_system(int k);

}  // namespace persym
