#include "persym/closed_forms.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>

namespace persym {

namespace {

using R = Rational;

// ---------------------------------------------------------------------------
// Formula tables. Every coefficient is transcribed exactly once, here.
// ---------------------------------------------------------------------------

// One term c * T^t * Y^y of a rank formula that holds for every k >= min_k, with T = 2^k.
struct GeneralTerm {
    int y_power;
    int t_power;
    R coeff;
};

struct GeneralFormula {
    int rank_index;
    int min_k;
    std::vector<GeneralTerm> terms;
};

const std::vector<GeneralFormula>& general_formulas() {
    static const std::vector<GeneralFormula> table = {
        {0, 1, {{0, 0, 1}}},
        {1, 2, {{1, 0, 3}, {0, 0, -3}}},
        {2, 3, {{2, 0, 7}, {1, 1, 2}, {1, 0, -25}, {0, 1, -2}, {0, 0, 18}}},
        {3, 4, {{3, 0, 15}, {2, 1, 7}, {2, 0, -133}, {1, 0, 294}, {1, 1, -21}, {0, 0, -176}, {0, 1, 14}}},
        {4, 5, {{4, 0, 31},
                {3, 1, R(35, 2)}, {3, 0, R(-1210, 2)},
                {2, 2, R(4, 6)}, {2, 1, R(-783, 6)}, {2, 0, R(19028, 6)},
                {1, 2, -2}, {1, 1, 269}, {1, 0, -5744},
                {0, 2, R(4, 3)}, {0, 1, R(-117 * 4, 3)}, {0, 0, R(9440, 3)}}},
        {5, 6, {{5, 0, 63},
                {4, 1, R(155, 4)}, {4, 0, -2573},
                {3, 2, R(5, 2)}, {3, 1, R(-2565, 4)}, {3, 0, 29150},
                {2, 2, R(-35, 2)}, {2, 1, R(6265, 2)}, {2, 0, R(-247520, 2)},
                {1, 2, 35}, {1, 1, -5490}, {1, 0, 203872},
                {0, 2, -20}, {0, 1, 2960}, {0, 0, -106752}}},
        {6, 7, {{6, 0, 127},
                {5, 1, R(651, 8)}, {5, 0, -10605},
                {4, 2, R(155, 3 * 8)}, {4, 1, R(-22661, 8)}, {4, 0, R(748154, 3)},
                {3, 3, R(8, 168)}, {3, 2, R(-16723, 168)}, {3, 1, R(5026378, 168)}, {3, 0, R(-382091648, 168)},
                {2, 3, R(-1, 3)}, {2, 2, R(5649, 12)}, {2, 1, R(-368711, 3)}, {2, 0, 8753120},
                {1, 3, R(2, 3)}, {1, 2, R(-2437, 3)}, {1, 1, R(597736, 3)}, {1, 0, R(-41276672, 3)},
                {0, 3, R(-8, 21)}, {0, 2, R(8 * 163, 3)}, {0, 1, R(-8 * 38816, 3)}, {0, 0, R(8 * 18483200, 21)}}},
    };
    return table;
}

// Rows of the fixed-k tables; coeffs[p] multiplies Y^p.
struct TableRow {
    int k;
    int rank_index;
    std::vector<std::int64_t> coeffs;
    const char* note = nullptr;
};

const std::vector<TableRow>& per_k_tables() {
    static const std::vector<TableRow> table = {
        {1, 0, {1}},
        {1, 1, {-1, 0, 1}},

        {2, 0, {1}},
        {2, 1, {-3, 3}},
        {2, 2, {2, -3, 0, 1}},

        {3, 0, {1}},
        {3, 1, {-3, 3}},
        {3, 2, {2, -9, 7}},
        {3, 3, {0, 6, -7, 0, 1}},

        {4, 0, {1}},
        {4, 1, {-3, 3}},
        {4, 2, {-14, 7, 7}},
        {4, 3, {48, -42, -21, 15}},
        {4, 4, {-32, 32, 14, -15, 0, 1}},

        {5, 0, {1}},
        {5, 1, {-3, 3}},
        {5, 2, {-46, 39, 7}},
        {5, 3, {272, -378, 91, 15}},
        {5, 4, {-480, 816, -322, -45, 31}},
        {5, 5, {256, -480, 224, 30, -31, 0, 1}},

        {6, 0, {1}},
        {6, 1, {-3, 3}},
        {6, 2, {-110, 103, 7}},
        {6, 3, {720, -1050, 315, 15}},
        {6, 4, {-1376, 3280, -2450, 515, 31}},
        {6, 5, {768, -4128, 5040, -1650, -93, 63}},
        {6, 6, {0, 1792, -2912, 1120, 62, -63, 0, 1}},

        {7, 0, {1}},
        {7, 1, {-3, 3}},
        {7, 2, {-238, 231, 7}},
        {7, 3, {1616, -2394, 763, 15}},
        {7, 4, {5024, -4080, -2610, 1635, 31}},
        {7, 5, {-55552, 74592, -9520, -11970, 2387, 63}},
        {7, 6, {114688, -166656, 35168, 24240, -7378, -189, 127}},
        {7, 7, {-65536, 98304, -23808, -13920, 4960, 126, -127, 0, 1}},

        {8, 0, {1}},
        {8, 1, {-3, 3}},
        {8, 2, {-494, 487, 7}},
        {8, 3, {3408, -5082, 1659, 15}},
        {8, 4, {50592, -67952, 13454, 3875, 31}},
        {8, 5, {-659712, 1092192, -468720, 28830, 7347, 63}},
        {8, 6, {2637824, -4804352, 2548448, -339760, -52514, 10227, 127}},
        {8, 7, {-4128768, 7913472, -4617984, 758880, 105648, -31122, -381, 255}},
        {8, 8, {2097152, -4128768, 2523136, -451840, -60512, 20832, 254, -255, 0, 1}},

        {9, 0, {1}},
        {9, 1, {-3, 3}},
        {9, 2, {-1006, 999, 7}},
        {9, 3, {6992, -10458, 3451, 15}},
        {9, 4, {272800, -392304, 111118, 8355, 31}},
        {9, 5, {-3834112, 6568032, -3107440, 356190, 17267, 63}},
        {9, 6, {16859136, -35215104, 24491488, -6658800, 492094, 31059, 127}},
        {9, 7, {-27983872, 81543168, -82168576, 32840160, -4053808, -219618, 42291, 255}},
        // The printed Y^3 term lacks its operator; the sign is the one under which the ten
        // rows sum to Y^10 and which the census at n = 1, 2 reproduces.
        {9, 8, {14680064, -83951616, 118013952, -57511680, 8456800, 440496, -127762, -765, 511},
         "Y^3 sign resolved to minus"},
        {9, 9, {0, 31457280, -57344000, 30965760, -4912384, -252000, 85344, 510, -511, 0, 1}},
    };
    return table;
}

// Γ_6 at fixed n = 3, 4, 5 as c3*T^3 + c2*T^2 + c1*T + c0 with T = 2^k.
struct FixedNRank6 {
    int n;
    std::array<std::int64_t, 4> coeffs;  // c0..c3
};

const std::array<FixedNRank6, 3>& rank6_fixed_n_table() {
    static const std::array<FixedNRank6, 3> table = {{
        {3, {-32768, 7 * 1024, -7 * 64, 8}},
        // one derivation line prints 2^(k+10) for the linear term; 2^k is the consistent value
        {4, {66170880, -6142080, 123480, 120}},
        {5, {-1240LL * 18883 * 1024, 1240LL * 128 * 3913, 1240LL * 3199, 1240}},
    }};
    return table;
}

// The k = 9 weighted sums Σ Γ_i 2^(q(9-i)), as published: coefficients by power of Y.
const std::array<std::vector<std::pair<int, std::int64_t>>, 3>& k9_weighted_table() {
    static const std::array<std::vector<std::pair<int, std::int64_t>>, 3> table = {{
        {{10, 1}},
        {{10, 1}, {8, 511}},
        {{10, 1}, {8, 1533}, {7, 1530}, {6, 259080}},
    }};
    return table;
}

const GeneralFormula* find_general(int i, int k) {
    for (const auto& f : general_formulas()) {
        if (f.rank_index == i && k >= f.min_k) {
            return &f;
        }
    }
    return nullptr;
}

const TableRow* find_row(int i, int k) {
    for (const auto& row : per_k_tables()) {
        if (row.k == k && row.rank_index == i) {
            return &row;
        }
    }
    return nullptr;
}

YPoly evaluate_general(const GeneralFormula& f, int k) {
    std::map<int, R> terms;
    for (const auto& t : f.terms) {
        terms[t.y_power] += t.coeff * R(pow2(static_cast<unsigned>(t.t_power * k)));
    }
    return YPoly::from_terms(terms);
}

YPoly row_poly(const TableRow& row) {
    std::vector<R> c;
    c.reserve(row.coeffs.size());
    for (auto v : row.coeffs) {
        c.emplace_back(v);
    }
    return YPoly(std::move(c));
}

void require_complete(const RankDistribution& dist) {
    if (!dist.complete()) {
        throw StructuralError("distribution for n = " + std::to_string(dist.n) + ", k = " +
                              std::to_string(dist.k) + " is incomplete (" +
                              dist.tuples_scanned.str() + " tuples scanned)");
    }
}

Rational weighted_sum(const RankDistribution& dist, int q) {
    Rational acc = 0;
    for (int i = 0; i <= dist.max_rank(); ++i) {
        acc += Rational(dist.gamma[static_cast<std::size_t>(i)]) * pow2q(static_cast<long>(q) * (dist.k - i));
    }
    return acc;
}

}  // namespace

BigInt RankPolynomial::evaluate(int n) const {
    const Rational v = poly.at_n(n);
    if (!is_integral(v)) {
        throw ConsistencyError("rank polynomial for i = " + std::to_string(rank_index) + ", k = " +
                               std::to_string(k) + " is non-integral at n = " + std::to_string(n) +
                               ": " + persym::to_string(v));
    }
    return to_integer(v);
}

bool has_closed_form(int rank_index, int k) {
    return k >= 1 && rank_index >= 0 &&
           (find_general(rank_index, k) != nullptr || find_row(rank_index, k) != nullptr);
}

RankPolynomial gamma_poly(int rank_index, int k) {
    const GeneralFormula* general = k >= 1 ? find_general(rank_index, k) : nullptr;
    const TableRow* row = find_row(rank_index, k);
    if (general == nullptr && row == nullptr) {
        throw NoClosedForm(rank_index, k);
    }

    RankPolynomial out;
    out.k = k;
    out.rank_index = rank_index;
    if (general != nullptr) {
        out.poly = evaluate_general(*general, k);
        out.valid_from_k = general->min_k;
        out.source = "general rank-" + std::to_string(rank_index) + " formula (k >= " +
                     std::to_string(general->min_k) + ")";
    }
    if (row != nullptr) {
        YPoly tabulated = row_poly(*row);
        std::string table_source = "k = " + std::to_string(k) + " table";
        if (row->note != nullptr) {
            table_source += std::string(" [") + row->note + "]";
        }
        if (general != nullptr) {
            if (tabulated != out.poly) {
                throw ConsistencyError("formula conflict at i = " + std::to_string(rank_index) +
                                       ", k = " + std::to_string(k) + ": general " +
                                       out.poly.to_string() + " vs table " + tabulated.to_string());
            }
            out.source += "; agrees with " + table_source;
        } else {
            out.poly = std::move(tabulated);
            out.valid_from_k = k;
            out.source = table_source;
        }
    }
    return out;
}

BigInt gamma_closed(int rank_index, int n, int k) {
    if (n < 0) {
        throw StructuralError("n must be non-negative");
    }
    return gamma_poly(rank_index, k).evaluate(n);
}

RankDistribution closed_distribution(int n, int k) {
    RankDistribution dist = RankDistribution::empty(n, k);
    for (int i = 0; i <= dist.max_rank(); ++i) {
        dist.gamma[static_cast<std::size_t>(i)] = gamma_closed(i, n, k);
    }
    dist.tuples_scanned = tuple_space_size(n, k);
    return dist;
}

BigInt rank6_fixed_n(int n, int k) {
    if (k < 7 || n < 0 || n > 5) {
        throw NoClosedForm(6, k);
    }
    if (n <= 2) {
        return 0;
    }
    const BigInt t = pow2(static_cast<unsigned>(k));
    for (const auto& entry : rank6_fixed_n_table()) {
        if (entry.n == n) {
            BigInt acc = 0;
            for (auto it = entry.coeffs.rbegin(); it != entry.coeffs.rend(); ++it) {
                acc = acc * t + *it;
            }
            return acc;
        }
    }
    throw NoClosedForm(6, k);
}

Rational moment(const RankDistribution& dist, int q) {
    Rational acc = 0;
    for (int i = 0; i <= dist.max_rank(); ++i) {
        acc += Rational(dist.gamma[static_cast<std::size_t>(i)]) * pow2q(-static_cast<long>(i) * q);
    }
    return acc;
}

BigInt r_formula(int q, int n, int k, const RankDistribution& dist) {
    if (dist.n != n || dist.k != k) {
        throw StructuralError("distribution is for different (n, k)");
    }
    if (q < 1) {
        throw StructuralError("q must be at least 1");
    }
    require_complete(dist);
    const Rational value = pow2q(static_cast<long>(q) * (2 * n + k) - static_cast<long>(k + 1) * n) *
                           moment(dist, q);
    if (!is_integral(value)) {
        throw ConsistencyError("solution count is not an integer: " + persym::to_string(value));
    }
    return to_integer(value);
}

YPoly weighted_moment_rhs(int q, int k) {
    const Rational t(pow2(static_cast<unsigned>(k)));
    switch (q) {
        case 0:
            return YPoly::monomial(k + 1);
        case 1:
            return YPoly::monomial(k + 1) + YPoly::monomial(k - 1, t - 1);
        case 2: {
            YPoly p = YPoly::monomial(k + 1) + YPoly::monomial(k - 1, 3 * (t - 1));
            // below k = 3 these terms vanish identically
            if (k >= 2) {
                p += YPoly::monomial(k - 2, 3 * (t - 2));
            }
            if (k >= 3) {
                p += YPoly::monomial(k - 3, t * t - 6 * t + 8);
            }
            return p;
        }
        default:
            throw StructuralError("weighted moment identities are known for q in {0, 1, 2}");
    }
}

YPoly k9_weighted_moment_rhs(int q) {
    if (q < 0 || q > 2) {
        throw StructuralError("weighted moment identities are known for q in {0, 1, 2}");
    }
    std::map<int, Rational> terms;
    for (const auto& [power, c] : k9_weighted_table()[static_cast<std::size_t>(q)]) {
        terms[power] = c;
    }
    return YPoly::from_terms(terms);
}

std::vector<IdentityCheck> check_moment_identities(const RankDistribution& dist) {
    require_complete(dist);
    const int n = dist.n;
    const int k = dist.k;
    std::vector<IdentityCheck> out;
    auto add = [&out](std::string anchor, std::string description, Rational lhs, Rational rhs) {
        const bool ok = lhs == rhs;
        out.push_back({std::move(anchor), std::move(description), std::move(lhs), std::move(rhs), ok});
    };

    Rational total = 0;
    for (const auto& g : dist.gamma) {
        total += Rational(g);
    }
    add("total-count", "sum of Gamma_i = 2^((k+1)n)", total, Rational(tuple_space_size(n, k)));
    add("zero-rank-count", "Gamma_0 = 1", Rational(dist.count(0)), Rational(1));

    const Rational m1 = moment(dist, 1);
    const Rational m2 = moment(dist, 2);
    add("q1-solution-count", "2^(k-(k-1)n) * sum Gamma_i 2^-i = 2^(2n) + 2^k - 1",
        pow2q(k - static_cast<long>(k - 1) * n) * m1,
        Rational(pow2(static_cast<unsigned>(2 * n)) + pow2(static_cast<unsigned>(k)) - 1));

    const long ln = n;
    const long lk = k;
    add("first-moment", "sum Gamma_i 2^-i = 2^(n+k(n-1)) + 2^((k-1)n) - 2^((k-1)n-k)", m1,
        pow2q(ln + lk * (ln - 1)) + pow2q((lk - 1) * ln) - pow2q((lk - 1) * ln - lk));

    const Rational t = pow2q(lk);
    add("second-moment",
        "sum Gamma_i 2^-2i = 2^(n+k(n-2)) + 2^(-n+k(n-2))(3*2^k-3) + 2^(-2n+k(n-2))(6*2^(k-1)-6)"
        " + 2^(-3n+kn) - 6*2^(n(k-3)-k) + 8*2^(-3n+k(n-2))",
        m2,
        pow2q(ln + lk * (ln - 2)) + pow2q(-ln + lk * (ln - 2)) * (3 * t - 3) +
            pow2q(-2 * ln + lk * (ln - 2)) * (6 * pow2q(lk - 1) - 6) + pow2q(-3 * ln + lk * ln) -
            6 * pow2q(ln * (lk - 3) - lk) + 8 * pow2q(-3 * ln + lk * (ln - 2)));

    if (k == 9) {
        static const char* names[] = {"k9-weighted-sum-0", "k9-weighted-sum-1", "k9-weighted-sum-2"};
        for (int q = 0; q <= 2; ++q) {
            add(names[q], "sum Gamma_i 2^(" + std::to_string(q) + "(9-i)) = " + k9_weighted_moment_rhs(q).to_string(),
                weighted_sum(dist, q), k9_weighted_moment_rhs(q).at_n(n));
        }
    }
    return out;
}

}  // namespace persym
