#include "persym/exact_fit.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace persym;

namespace {

std::vector<Rational> vec(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) {
        v.emplace_back(x);
    }
    return v;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::vector<Rational> column(const RationalMatrix& a, std::size_t c) {
    std::vector<Rational> v(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        v[r] = a(r, c);
    }
    return v;
}

const std::vector<Rational> kRoots124 = vec({1, 2, 4});

Rational oracle_count(int n, int k, int i) {
    const auto g = oracle::row_space_distribution(n, k);
    return i < static_cast<int>(g.size()) ? Rational(g[static_cast<std::size_t>(i)]) : Rational(0);
}

}  // namespace

TEST_CASE("solve_exact on small systems") {
    SUBCASE("identity") {
        const auto a = RationalMatrix::from_rows({vec({1, 0}), vec({0, 1})});
        const auto r = solve_exact(a, vec({3, -4}));
        CHECK(r.status == SolveStatus::unique);
        CHECK(r.solution == vec({3, -4}));
        CHECK(r.rank == 2);
    }
    SUBCASE("rational solution") {
        const auto a = RationalMatrix::from_rows({vec({2, 1}), vec({1, 3})});
        const auto r = solve_exact(a, vec({1, 0}));
        REQUIRE(r.status == SolveStatus::unique);
        CHECK(r.solution[0] == Rational(3, 5));
        CHECK(r.solution[1] == Rational(-1, 5));
    }
    SUBCASE("inconsistent with a certificate") {
        const auto a = RationalMatrix::from_rows({vec({1, 1}), vec({2, 2}), vec({0, 1})});
        const auto b = vec({1, 3, 5});
        const auto r = solve_exact(a, b);
        CHECK(r.status == SolveStatus::inconsistent);
        REQUIRE(r.certificate.size() == 3);
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(dot(r.certificate, column(a, c)) == 0);
        }
        CHECK(dot(r.certificate, b) != 0);
        CHECK(r.solution.empty());
    }
    SUBCASE("underdetermined with a nullspace basis") {
        const auto a = RationalMatrix::from_rows({vec({1, 2, 3})});
        const auto r = solve_exact(a, vec({6}));
        CHECK(r.status == SolveStatus::underdetermined);
        CHECK(r.rank == 1);
        REQUIRE(r.nullspace.size() == 2);
        for (const auto& v : r.nullspace) {
            CHECK(a.multiply(v) == vec({0}));
        }
        CHECK(a.multiply(r.solution) == vec({6}));
    }
    SUBCASE("wrong right-hand side length") {
        CHECK_THROWS_AS(solve_exact(RationalMatrix(2, 2), vec({1})), StructuralError);
        CHECK_THROWS_AS(RationalMatrix::from_rows({vec({1, 2}), vec({1})}), StructuralError);
    }
}

TEST_CASE("solve_exact property: residual, nullspace and certificate are exact") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = dim(rng);
        const std::size_t cols = dim(rng);
        RationalMatrix a(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                a(r, c) = (trial % 3 == 0 && c == 0) ? 0 : entry(rng);
            }
        }
        std::vector<Rational> b(rows);
        if (trial % 2 == 0) {
            std::vector<Rational> x(cols);
            for (auto& v : x) {
                v = entry(rng);
            }
            b = a.multiply(x);
        } else {
            for (auto& v : b) {
                v = entry(rng);
            }
        }
        const auto r = solve_exact(a, b);
        CHECK(r.rank <= std::min(rows, cols));
        if (trial % 2 == 0) {
            CHECK(r.status != SolveStatus::inconsistent);
        }
        if (r.status == SolveStatus::inconsistent) {
            for (std::size_t c = 0; c < cols; ++c) {
                CHECK(dot(r.certificate, column(a, c)) == 0);
            }
            CHECK(dot(r.certificate, b) != 0);
        } else {
            CHECK(a.multiply(r.solution) == b);
            CHECK(r.nullspace.size() == cols - r.rank);
            for (const auto& v : r.nullspace) {
                CHECK(a.multiply(v) == std::vector<Rational>(rows));
            }
            CHECK((r.status == SolveStatus::unique) == (r.rank == cols));
        }
    }
}

TEST_CASE("rank-6 polynomial from the fixed-n values") {
    for (int k = 7; k <= 12; ++k) {
        CAPTURE(k);
        const auto d = derive_rank6_polynomial(k);
        CHECK(d.report.status == SolveStatus::unique);
        CHECK(d.poly == gamma_poly(6, k).poly);
        const Rational t = pow2q(k);
        CHECK(d.alpha == 651 * t / 8 - 2429 * 4);
        CHECK(d.beta == Rational(155, 3) * t * t / 8 - 2263 * t + Rational(538784, 3));
        CHECK(d.gamma == t * t * t / 21 - Rational(163, 3) * t * t + Rational(38816, 3) * t - Rational(18483200, 21));
        const auto& p = d.poly;
        CHECK(p.coeff(5) == d.alpha - 889);
        CHECK(p.coeff(4) == d.beta - 7 * d.alpha + 1778);
        CHECK(p.coeff(3) == d.gamma - 7 * d.beta + 14 * d.alpha - 1016);
        CHECK(p.coeff(2) == -7 * d.gamma + 14 * d.beta - 8 * d.alpha);
        CHECK(p.coeff(1) == 14 * d.gamma - 8 * d.beta);
        CHECK(p.coeff(0) == -8 * d.gamma);
    }
    CHECK_THROWS_AS(derive_rank6_polynomial(6), NoClosedForm);
}

TEST_CASE("polynomial fitting") {
    SUBCASE("top rank at k = 2 from census samples") {
        std::vector<FitSample> samples;
        for (int n = 0; n <= 3; ++n) {
            samples.push_back({n, Rational(census(n, 2).count(2))});
        }
        const auto fit = fit_rank_polynomial(samples, 3);
        REQUIRE(fit.poly);
        CHECK(*fit.poly == YPoly({{3, Rational(1)}, {1, Rational(-3)}, {0, Rational(2)}}));
        CHECK(*fit.poly == gamma_poly(2, 2).poly);
    }
    SUBCASE("all-zero samples give the zero polynomial") {
        std::vector<FitSample> samples{{0, 0}, {1, 0}, {2, 0}};
        const auto fit = fit_rank_polynomial(samples, 2);
        REQUIRE(fit.poly);
        CHECK(fit.poly->is_zero());
    }
    SUBCASE("too few samples are underdetermined") {
        std::vector<FitSample> samples{{0, 1}, {1, 2}};
        const auto fit = fit_rank_polynomial(samples, 2);
        CHECK(fit.report.status == SolveStatus::underdetermined);
        CHECK_FALSE(fit.poly);
    }
    SUBCASE("contradictory samples are inconsistent") {
        std::vector<FitSample> samples{{0, 1}, {1, 2}, {2, 3}};
        const auto fit = fit_rank_polynomial(samples, 1);
        CHECK(fit.report.status == SolveStatus::inconsistent);
    }
    SUBCASE("more roots than degree is a structural error") {
        CHECK_THROWS_AS(fit_rank_polynomial({}, 2, kRoots124), StructuralError);
    }
}

TEST_CASE("rank-6 at k = 7: census samples alone do not determine the sextic") {
    std::vector<FitSample> samples;
    for (int n = 0; n <= 3; ++n) {
        samples.push_back({n, Rational(census(n, 7).count(6))});
    }
    const auto fit = fit_rank_polynomial(samples, 6, kRoots124);
    CHECK(fit.report.status == SolveStatus::underdetermined);
    CHECK(fit.report.rank == 1);
}

TEST_CASE("rank-6 at k = 7: census plus fixed-n values with the known leading coefficient") {
    std::vector<FitSample> samples;
    for (int n = 0; n <= 3; ++n) {
        samples.push_back({n, Rational(census(n, 7).count(6))});
    }
    for (int n = 4; n <= 5; ++n) {
        samples.push_back({n, Rational(rank6_fixed_n(n, 7))});
    }
    const auto fit = fit_rank_polynomial(samples, 6, kRoots124, Rational(127));
    REQUIRE(fit.report.status == SolveStatus::unique);
    CHECK(*fit.poly == gamma_poly(6, 7).poly);
}

TEST_CASE("rank-6 at k = 7: row-space oracle samples with a free leading coefficient") {
    std::vector<FitSample> samples;
    for (int n = 0; n <= 6; ++n) {
        samples.push_back({n, oracle_count(n, 7, 6)});
    }
    const auto fit = fit_rank_polynomial(samples, 6, kRoots124);
    REQUIRE(fit.report.status == SolveStatus::unique);
    CHECK(*fit.poly == gamma_poly(6, 7).poly);
    CHECK(fit.poly->coeff(6) == 127);

    // without forcing roots, seven samples still pin a degree-6 polynomial
    const auto free_fit = fit_rank_polynomial(samples, 6);
    REQUIRE(free_fit.poly);
    CHECK(*free_fit.poly == gamma_poly(6, 7).poly);
}

TEST_CASE("fits of oracle samples reproduce every closed form for k <= 6") {
    for (int k = 1; k <= 6; ++k) {
        for (int i = 0; i <= k; ++i) {
            const int degree = gamma_poly(i, k).poly.degree();
            std::vector<FitSample> samples;
            for (int n = 0; n <= std::max(degree, 0); ++n) {
                samples.push_back({n, oracle_count(n, k, i)});
            }
            CAPTURE(k);
            CAPTURE(i);
            const auto fit = fit_rank_polynomial(samples, std::max(degree, 0));
            REQUIRE(fit.poly);
            CHECK(*fit.poly == gamma_poly(i, k).poly);
        }
    }
}

TEST_CASE("moment system at k = 9") {
    const auto sol = solve_moment_system(9);
    CHECK(sol.first_unknown_rank == 7);
    CHECK(sol.unknowns.size() == 25);
    CHECK(sol.equations == 33);
    CHECK(sol.report.rank == 25);
    REQUIRE(sol.unique);
    CHECK(sol.coefficient(7, 6) == 42291);
    CHECK(sol.coefficient(7, 0) == -27983872);
    CHECK(sol.coefficient(9, 9) == 0);
    CHECK(sol.coefficient(8, 3) == -57511680);

    YPoly total;
    for (const auto& p : sol.polynomials) {
        total += p;
    }
    CHECK(total == YPoly::monomial(10));
    for (int i = 0; i <= 9; ++i) {
        CAPTURE(i);
        CHECK(sol.polynomials[static_cast<std::size_t>(i)] == gamma_poly(i, 9).poly);
    }
    for (int n = 1; n <= 2; ++n) {
        const auto d = census(n, 9);
        for (int i = 0; i <= 9; ++i) {
            CHECK(sol.polynomials[static_cast<std::size_t>(i)].at_n(n) == Rational(d.count(i)));
        }
    }
}

TEST_CASE("moment system at other k") {
    for (int k : {1, 2, 5, 7, 8}) {
        CAPTURE(k);
        const auto sol = solve_moment_system(k);
        REQUIRE(sol.unique);
        for (int i = 0; i <= k; ++i) {
            CHECK(sol.polynomials[static_cast<std::size_t>(i)] == gamma_poly(i, k).poly);
        }
    }
    const auto wide = solve_moment_system(12);
    CHECK(wide.consistent);
    CHECK_FALSE(wide.unique);
    CHECK(wide.report.status == SolveStatus::underdetermined);
    CHECK(wide.polynomials.empty());
    CHECK_THROWS_AS(solve_moment_system(0), StructuralError);
}
