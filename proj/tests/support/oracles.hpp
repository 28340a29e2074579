#pragma once

// Test-only oracles that share no code path with the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

// Rank as log2 of the number of distinct vectors in the row span.
inline int span_rank(const std::vector<std::uint64_t>& rows) {
    std::set<std::uint64_t> span{0};
    for (auto r : rows) {
        std::set<std::uint64_t> next = span;
        for (auto v : span) {
            next.insert(v ^ r);
        }
        span = std::move(next);
    }
    return std::countr_zero(span.size());
}

// A subspace of F2^k (k <= 8) in reduced row echelon form, pivots at the highest bit,
// rows sorted descending and packed one byte each.
inline std::uint64_t insert_vector(std::uint64_t state, unsigned v) {
    std::vector<unsigned> rows;
    for (std::uint64_t s = state; s != 0; s >>= 8) {
        rows.push_back(static_cast<unsigned>(s & 0xff));
    }
    for (auto r : rows) {
        const unsigned pivot = 1u << (31 - std::countl_zero(r));
        if (v & pivot) {
            v ^= r;
        }
    }
    if (v == 0) {
        return state;
    }
    const unsigned pivot = 1u << (31 - std::countl_zero(v));
    for (auto& r : rows) {
        if (r & pivot) {
            r ^= v;
        }
    }
    rows.push_back(v);
    std::sort(rows.begin(), rows.end());
    std::uint64_t packed = 0;
    for (auto r : rows) {
        packed = (packed << 8) | r;
    }
    return packed;
}

inline int state_rank(std::uint64_t state) {
    int r = 0;
    for (; state != 0; state >>= 8) {
        ++r;
    }
    return r;
}

// Γ_0..Γ_min(2n,k) by propagating subspace counts one persymmetric block at a time.
inline std::vector<std::uint64_t> row_space_distribution(int n, int k) {
    if (k < 1 || k > 8 || (k + 1) * n > 63) {
        throw std::invalid_argument("row_space_distribution: k must be in [1, 8] and (k+1)n <= 63");
    }
    const unsigned mask = (1u << k) - 1;
    const unsigned blocks = 1u << (k + 1);
    std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> transitions;
    std::map<std::uint64_t, std::uint64_t> counts{{0, 1}};
    for (int step = 0; step < n; ++step) {
        std::map<std::uint64_t, std::uint64_t> next;
        for (const auto& [state, count] : counts) {
            auto it = transitions.find(state);
            if (it == transitions.end()) {
                std::map<std::uint64_t, std::uint64_t> out;
                for (unsigned b = 0; b < blocks; ++b) {
                    ++out[insert_vector(insert_vector(state, b & mask), (b >> 1) & mask)];
                }
                it = transitions.emplace(state, std::move(out)).first;
            }
            for (const auto& [target, mult] : it->second) {
                next[target] += count * mult;
            }
        }
        counts = std::move(next);
    }
    std::vector<std::uint64_t> gamma(static_cast<std::size_t>(std::min(2 * n, k)) + 1, 0);
    for (const auto& [state, count] : counts) {
        gamma[static_cast<std::size_t>(state_rank(state))] += count;
    }
    return gamma;
}

}  // namespace oracle
