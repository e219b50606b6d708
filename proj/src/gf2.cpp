#include "xorsatlab/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace xorsat {

GF2Vector GF2Vector::from_string(std::string_view bits) {
    GF2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        char c = bits[i];
        if (c != '0' && c != '1') throw std::invalid_argument("GF2Vector: bit string must be 0/1");
        if (c == '1') v.set(i, true);
    }
    return v;
}

void GF2Vector::xor_with(const GF2Vector& other) {
    if (other.len_ != len_) throw std::invalid_argument("GF2Vector: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
}

std::size_t GF2Vector::popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool GF2Vector::is_zero() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

std::size_t GF2Vector::first_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
    return len_;
}

std::string GF2Vector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

GF2Vector GF2Matrix::row_vector(std::size_t r) const {
    GF2Vector v(cols_);
    for (std::size_t w = 0; w < wpr_; ++w) v.words()[w] = row(r)[w];
    return v;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = row(r)[w];
            while (word) {
                int bit = std::countr_zero(word);
                word &= word - 1;
                t.set(w * 64 + bit, r, true);
            }
        }
    return t;
}

namespace {

// Forward elimination on a working copy; returns pivot (row, col) pairs.
// aug, when non-null, is a right-hand-side column carried along.
std::vector<std::pair<std::size_t, std::size_t>>
echelonize(GF2Matrix& work, GF2Vector* aug) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    const std::size_t rows = work.rows(), cols = work.cols(), wpr = work.words_per_row();
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols && next_row < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = next_row; r < rows; ++r)
            if (work.get(r, c)) { pivot = r; break; }
        if (pivot == rows) continue;
        if (pivot != next_row) {
            for (std::size_t w = 0; w < wpr; ++w)
                std::swap(work.row(pivot)[w], work.row(next_row)[w]);
            if (aug) {
                bool tmp = aug->get(pivot);
                aug->set(pivot, aug->get(next_row));
                aug->set(next_row, tmp);
            }
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != next_row && work.get(r, c)) {
                for (std::size_t w = 0; w < wpr; ++w)
                    work.row(r)[w] ^= work.row(next_row)[w];
                if (aug && aug->get(next_row)) aug->flip(r);
            }
        }
        pivots.emplace_back(next_row, c);
        ++next_row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const GF2Matrix& m) {
    GF2Matrix work = m;
    return echelonize(work, nullptr).size();
}

std::optional<GF2Solution> solve(const GF2Matrix& m, const GF2Vector& b) {
    if (m.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    GF2Matrix work = m;
    GF2Vector rhs = b;
    auto pivots = echelonize(work, &rhs);

    // Inconsistent iff some zero row has rhs 1.
    for (std::size_t r = pivots.size(); r < work.rows(); ++r)
        if (rhs.get(r)) return std::nullopt;

    std::vector<bool> is_pivot_col(m.cols(), false);
    for (auto [r, c] : pivots) is_pivot_col[c] = true;

    GF2Solution sol;
    sol.particular = GF2Vector(m.cols());
    for (auto [r, c] : pivots)
        if (rhs.get(r)) sol.particular.set(c, true);

    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot_col[c]) continue;
        GF2Vector basis(m.cols());
        basis.set(c, true);
        for (auto [pr, pc] : pivots)
            if (work.get(pr, c)) basis.set(pc, true);
        sol.nullspace.push_back(std::move(basis));
    }
    return sol;
}

GF2Vector mat_vec(const GF2Matrix& m, const GF2Vector& x) {
    if (m.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    GF2Vector y(m.rows());
    const std::size_t wpr = m.words_per_row();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        const std::uint64_t* row = m.row(r);
        for (std::size_t w = 0; w < wpr; ++w) acc ^= row[w] & x.words()[w];
        if (std::popcount(acc) & 1) y.set(r, true);
    }
    return y;
}

bool column_submatrix_full_rank(const GF2Matrix& m, const std::vector<std::size_t>& cols) {
    for (std::size_t c : cols)
        if (c >= m.cols()) throw std::out_of_range("column_submatrix_full_rank: column index");
    if (cols.empty()) return true;
    // Work in the transpose orientation: one row per selected column.
    GF2Eliminator elim(m.rows());
    for (std::size_t c : cols) {
        GF2Vector col(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.get(r, c)) col.set(r, true);
        if (!elim.try_add(std::move(col))) return false;
    }
    return true;
}

std::size_t GF2Eliminator::reduce(GF2Vector& row) const {
    for (;;) {
        std::size_t lead = row.first_set();
        if (lead >= cols_) return cols_;
        std::int32_t idx = pivot_of_col_[lead];
        if (idx < 0) return lead;
        row.xor_with(basis_[idx]);
    }
}

bool GF2Eliminator::try_add(GF2Vector row) {
    if (row.size() != cols_) throw std::invalid_argument("GF2Eliminator: row width mismatch");
    std::size_t lead = reduce(row);
    if (lead == cols_) return false;
    pivot_of_col_[lead] = static_cast<std::int32_t>(basis_.size());
    pivots_.push_back(lead);
    basis_.push_back(std::move(row));
    return true;
}

void GF2Eliminator::truncate(std::size_t new_rank) {
    if (new_rank > pivots_.size()) throw std::invalid_argument("GF2Eliminator: truncate past rank");
    for (std::size_t i = new_rank; i < pivots_.size(); ++i) pivot_of_col_[pivots_[i]] = -1;
    pivots_.resize(new_rank);
    basis_.resize(new_rank);
}

bool GF2Eliminator::try_add_all(const std::vector<GF2Vector>& batch) {
    const std::size_t base = pivots_.size();
    for (const GF2Vector& r : batch) {
        GF2Vector copy = r;
        std::size_t lead = reduce(copy);
        if (lead == cols_) {
            for (std::size_t i = base; i < pivots_.size(); ++i) pivot_of_col_[pivots_[i]] = -1;
            pivots_.resize(base);
            basis_.resize(base);
            return false;
        }
        pivot_of_col_[lead] = static_cast<std::int32_t>(basis_.size());
        pivots_.push_back(lead);
        basis_.push_back(std::move(copy));
    }
    return true;
}

}  // namespace xorsat
