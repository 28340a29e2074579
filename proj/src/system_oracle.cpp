#include "persym/system_oracle.hpp"

#include "persym/gf2.hpp"

#include <algorithm>
#include <span>
#include <thread>
#include <vector>

namespace persym {

namespace {

void check_instance(const SystemInstance& inst) {
    if (inst.q < 1 || inst.n < 1 || inst.k < 1) {
        throw StructuralError("system instance needs q, n, k >= 1");
    }
}

// U_j^(i) sits at bits 2(j q + i) of the U index.
constexpr unsigned u_entry(std::uint64_t u, int j, int i, int q) {
    return static_cast<unsigned>((u >> (2 * (j * q + i))) & 3u);
}

void check_lower_bounds(const SystemInstance& inst, const BigInt& count) {
    if (count < pow2(static_cast<unsigned>(2 * inst.n * inst.q)) ||
        count < pow2(static_cast<unsigned>(inst.q * inst.k))) {
        throw ConsistencyError("solution count " + count.str() + " is below the trivial lower bound");
    }
}

void fill_kernel_rows(const SystemInstance& inst, std::uint64_t u, std::span<std::uint64_t> rows) {
    const int q = inst.q;
    const int k = inst.k;
    std::fill(rows.begin(), rows.end(), 0);
    for (int j = 0; j < inst.n; ++j) {
        for (int i = 0; i < q; ++i) {
            const unsigned entry = u_entry(u, j, i, q);
            for (int shift = 0; shift <= 1; ++shift) {
                if (!((entry >> shift) & 1u)) {
                    continue;
                }
                // Y_i coefficient e lands on T^(e + shift)
                for (int e = 0; e < k; ++e) {
                    rows[static_cast<std::size_t>(j * (k + 1) + e + shift)] ^= std::uint64_t{1} << (i * k + e);
                }
            }
        }
    }
}

unsigned pick_threads(unsigned requested, std::uint64_t work) {
    unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
    return static_cast<unsigned>(std::clamp<std::uint64_t>(work >> 10, 1, std::max(1u, t)));
}

}  // namespace

CostEstimate naive_cost(const SystemInstance& inst) {
    check_instance(inst);
    return {pow2(static_cast<unsigned>(inst.q * inst.k + 2 * inst.n * inst.q)), Strategy::naive, 0};
}

CostEstimate kernel_cost(const SystemInstance& inst) {
    check_instance(inst);
    return {pow2(static_cast<unsigned>(2 * inst.n * inst.q)), Strategy::kernel, 0};
}

BigInt count_naive(const SystemInstance& inst, const OracleOptions& options) {
    CostEstimate cost = naive_cost(inst);
    if (cost.assignment_count > options.naive_budget) {
        cost.budget = options.naive_budget;
        throw BudgetExceeded(cost);
    }
    const int q = inst.q;
    const int n = inst.n;
    const int k = inst.k;
    const std::uint64_t y_space = std::uint64_t{1} << (q * k);
    const std::uint64_t u_space = std::uint64_t{1} << (2 * n * q);
    const std::uint64_t y_mask = (std::uint64_t{1} << k) - 1;

    std::uint64_t solutions = 0;
    std::vector<gf2::Poly2> ys(static_cast<std::size_t>(q));
    for (std::uint64_t yi = 0; yi < y_space; ++yi) {
        for (int i = 0; i < q; ++i) {
            ys[static_cast<std::size_t>(i)] = gf2::Poly2((yi >> (i * k)) & y_mask);
        }
        for (std::uint64_t u = 0; u < u_space; ++u) {
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                gf2::Poly2 sum;
                for (int i = 0; i < q; ++i) {
                    sum += gf2::poly_mul(ys[static_cast<std::size_t>(i)], gf2::Poly2(u_entry(u, j, i, q)));
                }
                ok = sum.is_zero();
            }
            solutions += ok ? 1 : 0;
        }
    }
    BigInt result = solutions;
    check_lower_bounds(inst, result);
    return result;
}

std::vector<std::uint64_t> assemble_kernel_system(const SystemInstance& inst, std::uint64_t u) {
    check_instance(inst);
    if (inst.q * inst.k > gf2::BitMatrix::max_cols || 2 * inst.n * inst.q > 64) {
        throw StructuralError("kernel system too large");
    }
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(inst.n) * static_cast<std::size_t>(inst.k + 1));
    fill_kernel_rows(inst, u, rows);
    return rows;
}

BigInt count_kernel(const SystemInstance& inst, const OracleOptions& options, std::uint64_t shard_count,
                    std::uint64_t shard_index) {
    CostEstimate cost = kernel_cost(inst);
    if (2 * inst.n * inst.q > options.kernel_budget_exponent) {
        cost.budget = pow2(static_cast<unsigned>(options.kernel_budget_exponent));
        throw BudgetExceeded(cost);
    }
    if (inst.q * inst.k > gf2::BitMatrix::max_cols) {
        throw StructuralError("kernel counter supports at most 64 Y-coefficients");
    }
    if (shard_count == 0 || shard_index >= shard_count) {
        throw StructuralError("shard index must lie in [0, shard_count)");
    }
    const int q = inst.q;
    const int n = inst.n;
    const int k = inst.k;
    const int unknowns = q * k;
    const std::size_t eqs = static_cast<std::size_t>(n) * static_cast<std::size_t>(k + 1);

    using wide = unsigned __int128;
    const wide total = wide{1} << (2 * n * q);
    const auto begin = static_cast<std::uint64_t>(total * shard_index / shard_count);
    const auto end = static_cast<std::uint64_t>(total * (shard_index + 1) / shard_count);

    // histogram of kernel dimensions
    auto work = [&](std::uint64_t b, std::uint64_t e, std::vector<std::uint64_t>& hist) {
        std::vector<std::uint64_t> rows(eqs);
        for (std::uint64_t u = b; u < e; ++u) {
            fill_kernel_rows(inst, u, rows);
            ++hist[static_cast<std::size_t>(unknowns - gf2::rank_in_place(rows))];
        }
    };

    const unsigned threads = pick_threads(options.threads, end - begin);
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(static_cast<std::size_t>(unknowns) + 1, 0));
    if (threads == 1) {
        work(begin, end, partial[0]);
    } else {
        const std::uint64_t span = (end - begin) / threads;
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t b = begin + span * t;
            const std::uint64_t e = t + 1 == threads ? end : b + span;
            workers.emplace_back([&, b, e, t] { work(b, e, partial[t]); });
        }
    }

    BigInt result = 0;
    for (const auto& hist : partial) {
        for (std::size_t dim = 0; dim < hist.size(); ++dim) {
            result += BigInt(hist[dim]) << static_cast<unsigned>(dim);
        }
    }
    if (shard_count == 1) {
        check_lower_bounds(inst, result);
    }
    return result;
}

}  // namespace persym
