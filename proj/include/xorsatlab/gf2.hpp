#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xorsat {

// Bit-packed vector over F2. Trailing bits past len() are kept zero.
class GF2Vector {
public:
    GF2Vector() = default;
    explicit GF2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    static GF2Vector from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const GF2Vector& other);
    std::size_t popcount() const;
    bool is_zero() const;

    // First set bit, or size() if none.
    std::size_t first_set() const;

    std::vector<std::uint64_t>& words() { return words_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const GF2Vector&) const = default;

    std::string to_string() const;

    static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Row-major bit-packed matrix over F2, 64 columns per word.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(GF2Vector::word_count(cols)),
          data_(rows * wpr_, 0) {}

    static GF2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (c & 63);
        std::uint64_t& w = data_[r * wpr_ + (c >> 6)];
        if (v) w |= mask; else w &= ~mask;
    }

    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }
    std::uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }

    GF2Vector row_vector(std::size_t r) const;
    GF2Matrix transpose() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

std::size_t rank(const GF2Matrix& m);

struct GF2Solution {
    GF2Vector particular;                // one x with Mx = b, free variables set to 0
    std::vector<GF2Vector> nullspace;    // basis of ker(M)
};

// Gaussian elimination with deterministic pivoting (first row with a set bit,
// columns scanned left to right). Inputs are not modified.
std::optional<GF2Solution> solve(const GF2Matrix& m, const GF2Vector& b);

GF2Vector mat_vec(const GF2Matrix& m, const GF2Vector& x);

// True iff the selected columns of m are linearly independent.
bool column_submatrix_full_rank(const GF2Matrix& m, const std::vector<std::size_t>& cols);

// Incremental row-echelon basis; used to grow maximal independent equation
// sets (Prange, Turbo Prange) and for erasure-recovery rank checks.
class GF2Eliminator {
public:
    explicit GF2Eliminator(std::size_t cols)
        : cols_(cols), pivot_of_col_(cols, -1) {}

    // Adds the row to the basis if independent of what is already there.
    bool try_add(GF2Vector row);

    // All-or-nothing: adds the whole batch iff the batch extends the basis to
    // rank + batch.size(). On failure the basis is unchanged.
    bool try_add_all(const std::vector<GF2Vector>& batch);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }

    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
    const std::vector<GF2Vector>& basis() const { return basis_; }

    // Drops basis rows added after the rank was new_rank (LIFO rollback).
    void truncate(std::size_t new_rank);

private:
    // Reduces row in place against the basis; returns pivot column or cols_ if
    // the row reduced to zero.
    std::size_t reduce(GF2Vector& row) const;

    std::size_t cols_;
    std::vector<std::int32_t> pivot_of_col_;  // basis index per pivot column, -1 if none
    std::vector<std::size_t> pivots_;         // pivot column of basis_[i]
    std::vector<GF2Vector> basis_;
};

}  // namespace xorsat
