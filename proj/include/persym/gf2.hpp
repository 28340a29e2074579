#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace persym::gf2 {

/// Dense matrix over GF(2), one 64-bit word per row. Bit j of row r is entry (r, j).
class BitMatrix {
public:
    static constexpr int max_cols = 64;

    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    /// Rows given as bit words; bits at positions >= cols must be clear.
    static BitMatrix from_rows(int cols, std::vector<std::uint64_t> rows);
    /// Rows given as 0/1 entries, leftmost entry is column 0.
    static BitMatrix from_entries(std::initializer_list<std::initializer_list<int>> entries);

    int rows() const noexcept { return static_cast<int>(rows_.size()); }
    int cols() const noexcept { return cols_; }

    bool get(int r, int c) const { return (rows_[r] >> c) & 1u; }
    void set(int r, int c, bool value);

    std::uint64_t row(int r) const { return rows_[r]; }
    std::span<const std::uint64_t> row_words() const noexcept { return rows_; }

    BitMatrix transposed() const;

    bool operator==(const BitMatrix&) const = default;

private:
    int cols_ = 0;
    std::vector<std::uint64_t> rows_;
};

/// Row rank of the words in `rows`. The span is overwritten with an echelon form.
int rank_in_place(std::span<std::uint64_t> rows) noexcept;

int rank(const BitMatrix& m);

/// cols - rank; m * x = 0 has 2^kernel_dim(m) solutions.
int kernel_dim(const BitMatrix& m);

/// Polynomial over F2 in T, bit d is the coefficient of T^d.
class Poly2 {
public:
    constexpr Poly2() = default;
    constexpr explicit Poly2(std::uint64_t bits) : bits_(bits) {}

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool is_zero() const noexcept { return bits_ == 0; }

    /// Empty for the zero polynomial.
    std::optional<int> degree() const noexcept;

    friend constexpr Poly2 operator+(Poly2 a, Poly2 b) noexcept { return Poly2(a.bits_ ^ b.bits_); }
    constexpr Poly2& operator+=(Poly2 o) noexcept {
        bits_ ^= o.bits_;
        return *this;
    }
    constexpr bool operator==(const Poly2&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// Carry-less product. Throws std::overflow_error if the product degree exceeds 63.
Poly2 poly_mul(Poly2 a, Poly2 b);

inline Poly2 operator*(Poly2 a, Poly2 b) { return poly_mul(a, b); }

}  // namespace persym::gf2
