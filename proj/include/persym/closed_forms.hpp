#pragma once

#include "persym/errors.hpp"
#include "persym/numeric.hpp"
#include "persym/persym.hpp"
#include "persym/ypoly.hpp"

#include <string>
#include <vector>

namespace persym {

/// Γ_i for fixed (i, k) as a polynomial in Y = 2^n.
struct RankPolynomial {
    int k = 0;
    int rank_index = 0;
    YPoly poly;
    /// Smallest k for which the formula this came from is stated.
    int valid_from_k = 0;
    /// Which formula tables produced the polynomial.
    std::string source;

    BigInt evaluate(int n) const;
};

bool has_closed_form(int rank_index, int k);

/// Throws NoClosedForm when no formula covers (i, k), and ConsistencyError when the
/// general formula and the per-k table both cover it but disagree.
RankPolynomial gamma_poly(int rank_index, int k);

/// Exact Γ_i at n, from gamma_poly. Throws ConsistencyError on a non-integral value.
BigInt gamma_closed(int rank_index, int n, int k);

/// Γ_0..Γ_min(2n,k) from closed forms alone, marked complete.
RankDistribution closed_distribution(int n, int k);

/// Γ_6 at a fixed small block count n in [0, 5], as a function of k >= 7.
BigInt rank6_fixed_n(int n, int k);

/// Σ_i Γ_i 2^(-iq).
Rational moment(const RankDistribution& dist, int q);

/// Number of solutions of the degree-bounded bilinear system, from a complete distribution:
/// 2^(q(2n+k) - (k+1)n) * moment(dist, q).
BigInt r_formula(int q, int n, int k, const RankDistribution& dist);

/// Σ_i Γ_i 2^(q(k-i)) for q in {0, 1, 2} as a polynomial in Y, valid for every n >= 0.
YPoly weighted_moment_rhs(int q, int k);

/// The same three sums at k = 9 with the published integer coefficients.
YPoly k9_weighted_moment_rhs(int q);

struct IdentityCheck {
    std::string anchor;
    std::string description;
    Rational lhs;
    Rational rhs;
    bool ok = false;
};

/// Evaluates every identity that applies to (dist.n, dist.k). Requires a complete distribution.
std::vector<IdentityCheck> check_moment_identities(const RankDistribution& dist);

}  // namespace persym
