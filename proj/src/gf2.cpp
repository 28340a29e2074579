#include "persym/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace persym::gf2 {

namespace {

std::uint64_t low_mask(int cols) {
    return cols >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols) - 1;
}

}  // namespace

BitMatrix::BitMatrix(int rows, int cols) : cols_(cols) {
    if (rows < 0 || cols < 0 || cols > max_cols) {
        throw std::invalid_argument("BitMatrix: dimensions out of range");
    }
    rows_.assign(static_cast<std::size_t>(rows), 0);
}

BitMatrix BitMatrix::from_rows(int cols, std::vector<std::uint64_t> rows) {
    if (cols < 0 || cols > max_cols) {
        throw std::invalid_argument("BitMatrix: column count out of range");
    }
    for (auto w : rows) {
        if (w & ~low_mask(cols)) {
            throw std::invalid_argument("BitMatrix: row has bits beyond the column count");
        }
    }
    BitMatrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_entries(std::initializer_list<std::initializer_list<int>> entries) {
    int cols = entries.size() == 0 ? 0 : static_cast<int>(entries.begin()->size());
    BitMatrix m(static_cast<int>(entries.size()), cols);
    int r = 0;
    for (const auto& row : entries) {
        if (static_cast<int>(row.size()) != cols) {
            throw std::invalid_argument("BitMatrix: ragged rows");
        }
        int c = 0;
        for (int v : row) {
            m.set(r, c++, v != 0);
        }
        ++r;
    }
    return m;
}

void BitMatrix::set(int r, int c, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (value) {
        rows_[r] |= bit;
    } else {
        rows_[r] &= ~bit;
    }
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows());
    for (int r = 0; r < rows(); ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (get(r, c)) {
                t.set(c, r, true);
            }
        }
    }
    return t;
}

int rank_in_place(std::span<std::uint64_t> rows) noexcept {
    int rank = 0;
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t pivot_row = rows[i];
        if (pivot_row == 0) {
            continue;
        }
        // pivot on the lowest set bit
        const std::uint64_t pivot = pivot_row & (~pivot_row + 1);
        ++rank;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rows[j] & pivot) {
                rows[j] ^= pivot_row;
            }
        }
    }
    return rank;
}

int rank(const BitMatrix& m) {
    std::vector<std::uint64_t> copy(m.row_words().begin(), m.row_words().end());
    return rank_in_place(copy);
}

int kernel_dim(const BitMatrix& m) { return m.cols() - rank(m); }

std::optional<int> Poly2::degree() const noexcept {
    if (bits_ == 0) {
        return std::nullopt;
    }
    return 63 - std::countl_zero(bits_);
}

Poly2 poly_mul(Poly2 a, Poly2 b) {
    const auto da = a.degree();
    const auto db = b.degree();
    if (!da || !db) {
        return Poly2{};
    }
    if (*da + *db > 63) {
        throw std::overflow_error("poly_mul: product degree exceeds 63");
    }
    std::uint64_t acc = 0;
    std::uint64_t rest = b.bits();
    while (rest != 0) {
        const int shift = std::countr_zero(rest);
        acc ^= a.bits() << shift;
        rest &= rest - 1;
    }
    return Poly2(acc);
}

}  // namespace persym::gf2
