#pragma once

#include "persym/errors.hpp"
#include "persym/gf2.hpp"
#include "persym/numeric.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace persym {

/// The n(k+1) bits alpha_j^(i) of one n-times persymmetric 2n x k matrix.
///
/// Block i (0-based) holds alpha_1^(i+1) .. alpha_{k+1}^(i+1) in bits 0..k. The canonical
/// integer of the tuple is the blocks concatenated little-endian, block 0 lowest.
class ParameterTuple {
public:
    static constexpr int max_k = 31;

    ParameterTuple(int n, int k);

    /// Decode a canonical integer; requires n(k+1) <= 64.
    static ParameterTuple from_index(int n, int k, std::uint64_t index);
    /// Bits in canonical order; throws StructuralError unless bits.size() == n(k+1).
    static ParameterTuple from_bits(int n, int k, std::span<const std::uint8_t> bits);
    static ParameterTuple from_blocks(int k, std::vector<std::uint32_t> blocks);

    int n() const noexcept { return static_cast<int>(blocks_.size()); }
    int k() const noexcept { return k_; }
    int bit_length() const noexcept { return n() * (k_ + 1); }

    /// alpha_j^(i) with 1-based i and j, j in [1, k+1].
    bool alpha(int i, int j) const;
    std::uint32_t block(int i) const { return blocks_[i]; }
    std::span<const std::uint32_t> blocks() const noexcept { return blocks_; }

    std::uint64_t to_index() const;

private:
    int k_;
    std::vector<std::uint32_t> blocks_;
};

/// The 2n x k matrix whose rows 2i, 2i+1 are block i and block i shifted left by one place.
gf2::BitMatrix build_matrix(const ParameterTuple& t);

/// 2^(2n + k - rank(build_matrix(t))).
BigInt exp_sum_value(const ParameterTuple& t);

/// Rank histogram Γ_0..Γ_min(2n,k) over some range of tuples.
struct RankDistribution {
    int n = 0;
    int k = 1;
    std::vector<BigInt> gamma;
    BigInt tuples_scanned = 0;

    static RankDistribution empty(int n, int k);

    int max_rank() const noexcept { return static_cast<int>(gamma.size()) - 1; }
    /// Γ_i, or 0 for ranks above min(2n, k).
    BigInt count(int rank) const;
    /// Whether the histogram covers all 2^((k+1)n) tuples.
    bool complete() const;

    RankDistribution& operator+=(const RankDistribution& other);
    bool operator==(const RankDistribution&) const = default;
};

RankDistribution merge(const RankDistribution& a, const RankDistribution& b);

/// 2^((k+1)n)
BigInt tuple_space_size(int n, int k);

enum class CensusMethod {
    baseline,     // build and eliminate every matrix from scratch
    incremental,  // reduce blocks 2..n once, table-reduce the low block
};

struct CensusOptions {
    std::uint64_t budget = std::uint64_t{1} << 32;
    CensusMethod method = CensusMethod::incremental;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct ShardRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

/// The contiguous index range of shard `shard_index` out of `shard_count`.
ShardRange shard_range(int n, int k, std::uint64_t shard_count, std::uint64_t shard_index);

/// Rank histogram over one shard of the canonical tuple order.
/// Throws BudgetExceeded if the shard holds more than options.budget tuples.
RankDistribution census(int n, int k, std::uint64_t shard_count = 1, std::uint64_t shard_index = 0,
                        const CensusOptions& options = {});

}  // namespace persym
