#include "persym/persym.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <thread>

namespace persym {

namespace {

void check_shape(int n, int k) {
    if (n < 0) {
        throw StructuralError("block count n must be non-negative");
    }
    if (k < 1 || k > ParameterTuple::max_k) {
        throw StructuralError("column count k must lie in [1, 31]");
    }
}

constexpr std::uint32_t block_mask(int k) {
    return k + 1 >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << (k + 1)) - 1;
}

constexpr std::uint64_t col_mask(int k) { return (std::uint64_t{1} << k) - 1; }

using Histogram = std::vector<std::uint64_t>;

void tally_baseline(int n, int k, std::uint64_t begin, std::uint64_t end, Histogram& hist) {
    const int width = k + 1;
    const std::uint64_t bmask = block_mask(k);
    const std::uint64_t cmask = col_mask(k);
    std::array<std::uint64_t, 64> rows{};
    for (std::uint64_t index = begin; index < end; ++index) {
        std::uint64_t rest = index;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t block = rest & bmask;
            rest >>= width;
            rows[2 * i] = block & cmask;
            rows[2 * i + 1] = (block >> 1) & cmask;
        }
        ++hist[gf2::rank_in_place(std::span(rows.data(), 2 * static_cast<std::size_t>(n)))];
    }
}

// Reduces v against an echelon basis whose pivots are the lowest set bits, in creation order.
std::uint64_t reduce(std::uint64_t v, std::span<const std::uint64_t> basis) {
    for (auto row : basis) {
        if (v & row & (~row + 1)) {
            v ^= row;
        }
    }
    return v;
}

constexpr int max_table_k = 20;

void tally_incremental(int n, int k, std::uint64_t begin, std::uint64_t end, Histogram& hist) {
    if (n == 0) {
        hist[0] += end - begin;
        return;
    }
    const int width = k + 1;
    const std::uint64_t bmask = block_mask(k);
    const std::uint64_t cmask = col_mask(k);
    const bool use_table = k <= max_table_k;
    std::vector<std::uint64_t> table(use_table ? std::size_t{1} << k : 0);
    std::array<std::uint64_t, 64> rows{};
    std::vector<std::uint64_t> basis;
    basis.reserve(64);

    std::uint64_t index = begin;
    while (index < end) {
        const std::uint64_t high = index >> width;
        const std::uint64_t stop = std::min(end, (high + 1) << width);

        std::uint64_t rest = high;
        for (int i = 1; i < n; ++i) {
            const std::uint64_t block = rest & bmask;
            rest >>= width;
            rows[2 * i - 2] = block & cmask;
            rows[2 * i - 1] = (block >> 1) & cmask;
        }
        const auto prefix = std::span(rows.data(), 2 * static_cast<std::size_t>(n - 1));
        const int prefix_rank = gf2::rank_in_place(prefix);
        basis.clear();
        for (auto row : prefix) {
            if (row != 0) {
                basis.push_back(row);
            }
        }

        if (use_table) {
            // reduction is linear, so fill the table from single-bit images
            table[0] = 0;
            for (std::uint64_t v = 1; v <= cmask; ++v) {
                const std::uint64_t low = v & (~v + 1);
                table[v] = (v == low) ? reduce(v, basis) : table[v ^ low] ^ table[low];
            }
        }

        for (std::uint64_t i = index; i < stop; ++i) {
            const std::uint64_t block = i & bmask;
            std::uint64_t a = block & cmask;
            std::uint64_t c = (block >> 1) & cmask;
            if (use_table) {
                a = table[a];
                c = table[c];
            } else {
                a = reduce(a, basis);
                c = reduce(c, basis);
            }
            const int extra = a != 0 ? 1 + int(c != 0 && c != a) : int(c != 0);
            ++hist[prefix_rank + extra];
        }
        index = stop;
    }
}

}  // namespace

ParameterTuple::ParameterTuple(int n, int k) : k_(k) {
    check_shape(n, k);
    blocks_.assign(static_cast<std::size_t>(n), 0);
}

ParameterTuple ParameterTuple::from_index(int n, int k, std::uint64_t index) {
    ParameterTuple t(n, k);
    if (t.bit_length() > 64) {
        throw StructuralError("canonical index wider than 64 bits");
    }
    if (t.bit_length() < 64 && (index >> t.bit_length()) != 0) {
        throw StructuralError("canonical index out of range");
    }
    for (int i = 0; i < n; ++i) {
        t.blocks_[i] = static_cast<std::uint32_t>(index & block_mask(k));
        index >>= (k + 1);
    }
    return t;
}

ParameterTuple ParameterTuple::from_bits(int n, int k, std::span<const std::uint8_t> bits) {
    ParameterTuple t(n, k);
    if (static_cast<int>(bits.size()) != t.bit_length()) {
        throw StructuralError("parameter tuple needs " + std::to_string(t.bit_length()) +
                              " bits, got " + std::to_string(bits.size()));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= k; ++j) {
            if (bits[static_cast<std::size_t>(i * (k + 1) + j)] != 0) {
                t.blocks_[i] |= std::uint32_t{1} << j;
            }
        }
    }
    return t;
}

ParameterTuple ParameterTuple::from_blocks(int k, std::vector<std::uint32_t> blocks) {
    ParameterTuple t(static_cast<int>(blocks.size()), k);
    for (auto b : blocks) {
        if (b & ~block_mask(k)) {
            throw StructuralError("block has bits beyond position k");
        }
    }
    t.blocks_ = std::move(blocks);
    return t;
}

bool ParameterTuple::alpha(int i, int j) const {
    return (blocks_.at(static_cast<std::size_t>(i - 1)) >> (j - 1)) & 1u;
}

std::uint64_t ParameterTuple::to_index() const {
    if (bit_length() > 64) {
        throw StructuralError("canonical index wider than 64 bits");
    }
    std::uint64_t index = 0;
    for (int i = n() - 1; i >= 0; --i) {
        index = (index << (k_ + 1)) | blocks_[i];
    }
    return index;
}

gf2::BitMatrix build_matrix(const ParameterTuple& t) {
    const std::uint64_t cmask = col_mask(t.k());
    std::vector<std::uint64_t> rows;
    rows.reserve(2 * t.blocks().size());
    for (auto block : t.blocks()) {
        rows.push_back(block & cmask);
        rows.push_back((block >> 1) & cmask);
    }
    return gf2::BitMatrix::from_rows(t.k(), std::move(rows));
}

BigInt exp_sum_value(const ParameterTuple& t) {
    return pow2(static_cast<unsigned>(2 * t.n() + t.k() - gf2::rank(build_matrix(t))));
}

RankDistribution RankDistribution::empty(int n, int k) {
    check_shape(n, k);
    RankDistribution d;
    d.n = n;
    d.k = k;
    d.gamma.assign(static_cast<std::size_t>(std::min(2 * n, k)) + 1, BigInt(0));
    return d;
}

BigInt RankDistribution::count(int rank) const {
    if (rank < 0 || rank > max_rank()) {
        return 0;
    }
    return gamma[static_cast<std::size_t>(rank)];
}

bool RankDistribution::complete() const { return tuples_scanned == tuple_space_size(n, k); }

RankDistribution& RankDistribution::operator+=(const RankDistribution& other) {
    if (other.n != n || other.k != k || other.gamma.size() != gamma.size()) {
        throw StructuralError("cannot merge distributions with different (n, k)");
    }
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        gamma[i] += other.gamma[i];
    }
    tuples_scanned += other.tuples_scanned;
    return *this;
}

RankDistribution merge(const RankDistribution& a, const RankDistribution& b) {
    RankDistribution out = a;
    out += b;
    return out;
}

BigInt tuple_space_size(int n, int k) { return pow2(static_cast<unsigned>((k + 1) * n)); }

ShardRange shard_range(int n, int k, std::uint64_t shard_count, std::uint64_t shard_index) {
    check_shape(n, k);
    if (shard_count == 0 || shard_index >= shard_count) {
        throw StructuralError("shard index must lie in [0, shard_count)");
    }
    const int bits = (k + 1) * n;
    if (bits > 63) {
        throw BudgetExceeded(CostEstimate{tuple_space_size(n, k) / shard_count, Strategy::census,
                                          BigInt(std::numeric_limits<std::uint64_t>::max())});
    }
    using wide = unsigned __int128;
    const wide total = wide{1} << bits;
    return ShardRange{static_cast<std::uint64_t>(total * shard_index / shard_count),
                      static_cast<std::uint64_t>(total * (shard_index + 1) / shard_count)};
}

RankDistribution census(int n, int k, std::uint64_t shard_count, std::uint64_t shard_index,
                        const CensusOptions& options) {
    const ShardRange range = shard_range(n, k, shard_count, shard_index);
    const std::uint64_t size = range.end - range.begin;
    if (size > options.budget) {
        throw BudgetExceeded(CostEstimate{BigInt(size), Strategy::census, BigInt(options.budget)});
    }

    RankDistribution dist = RankDistribution::empty(n, k);
    const std::size_t bins = dist.gamma.size();

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, threads);
    constexpr std::uint64_t min_chunk = std::uint64_t{1} << 16;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, size / min_chunk)));

    auto run = [&](std::uint64_t b, std::uint64_t e, Histogram& hist) {
        if (options.method == CensusMethod::baseline) {
            tally_baseline(n, k, b, e, hist);
        } else {
            tally_incremental(n, k, b, e, hist);
        }
    };

    std::vector<Histogram> partial(threads, Histogram(bins, 0));
    if (threads == 1) {
        run(range.begin, range.end, partial[0]);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t b = range.begin + size / threads * t;
            const std::uint64_t e = t + 1 == threads ? range.end : b + size / threads;
            workers.emplace_back([&, b, e, t] { run(b, e, partial[t]); });
        }
    }

    for (const auto& hist : partial) {
        for (std::size_t i = 0; i < bins; ++i) {
            dist.gamma[i] += hist[i];
        }
    }
    dist.tuples_scanned = size;
    return dist;
}

}  // namespace persym
