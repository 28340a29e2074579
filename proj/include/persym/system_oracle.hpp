#pragma once

#include "persym/errors.hpp"
#include "persym/numeric.hpp"

#include <cstdint>
#include <vector>

namespace persym {

/// U Y = 0 over F2[T] with q unknowns Y_i (deg <= k-1) and an n x q matrix U (entries deg <= 1).
struct SystemInstance {
    int q = 1;
    int n = 1;
    int k = 1;
};

struct OracleOptions {
    /// Maximum number of (Y, U) assignments the naive counter may visit.
    std::uint64_t naive_budget = std::uint64_t{1} << 22;
    /// Maximum 2nq for the kernel counter (2^(2nq) linear solves).
    int kernel_budget_exponent = 24;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// 2^(qk + 2nq)
CostEstimate naive_cost(const SystemInstance& inst);
/// 2^(2nq)
CostEstimate kernel_cost(const SystemInstance& inst);

/// Visits every assignment of all Y_i and U_j^(i) and checks each equation with poly_mul.
BigInt count_naive(const SystemInstance& inst, const OracleOptions& options = {});

/// Coefficient matrix of the linear system in the Y coefficients induced by the U with index u,
/// one bit-packed row per (equation, power of T).
std::vector<std::uint64_t> assemble_kernel_system(const SystemInstance& inst, std::uint64_t u);

/// For each U, counts the Y solving the induced linear system as 2^(kernel dimension).
/// Equation j, coefficient of T^d is row j(k+1)+d; coefficient of T^e in Y_i is column ik+e.
/// The U-matrices are enumerated as integers in [0, 2^(2nq)); one contiguous shard is counted.
BigInt count_kernel(const SystemInstance& inst, const OracleOptions& options = {},
                    std::uint64_t shard_count = 1, std::uint64_t shard_index = 0);

}  // namespace persym
