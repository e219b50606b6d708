#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xorsatlab/gf2.hpp"
#include "xorsatlab/rng.hpp"

using namespace xorsat;

namespace {

GF2Matrix from_rows(const std::vector<std::string>& rows) {
    GF2Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] == '1') m.set(r, c, true);
    return m;
}

GF2Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    GF2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng.next_u64() & 1) m.set(r, c, true);
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(GF2Matrix::identity(3)) == 3);
    CHECK(rank(GF2Matrix(4, 7)) == 0);
    CHECK(rank(from_rows({"110", "011", "101"})) == 2);
}

TEST_CASE("solve basics") {
    auto s = solve(GF2Matrix::identity(3), GF2Vector::from_string("101"));
    REQUIRE(s.has_value());
    CHECK(s->particular.to_string() == "101");
    CHECK(s->nullspace.empty());

    auto s2 = solve(from_rows({"11"}), GF2Vector::from_string("1"));
    REQUIRE(s2.has_value());
    CHECK(s2->particular.popcount() == 1);
    REQUIRE(s2->nullspace.size() == 1);
    CHECK(s2->nullspace[0].to_string() == "11");

    CHECK(!solve(from_rows({"1", "1"}), GF2Vector::from_string("10")).has_value());
}

TEST_CASE("solve agrees with exhaustive enumeration on small systems") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(10);
        GF2Matrix m = random_matrix(rows, cols, rng);
        GF2Vector b(rows);
        for (std::size_t r = 0; r < rows; ++r)
            if (rng.next_u64() & 1) b.set(r, true);

        std::size_t solutions = 0;
        for (std::uint64_t x = 0; x < (std::uint64_t(1) << cols); ++x) {
            GF2Vector xv(cols);
            for (std::size_t c = 0; c < cols; ++c)
                if ((x >> c) & 1) xv.set(c, true);
            if (mat_vec(m, xv) == b) ++solutions;
        }

        auto s = solve(m, b);
        if (!s.has_value()) {
            CHECK(solutions == 0);
        } else {
            REQUIRE(solutions > 0);
            CHECK(mat_vec(m, s->particular) == b);
            CHECK(solutions == (std::uint64_t(1) << s->nullspace.size()));
            for (const auto& v : s->nullspace) {
                CHECK(mat_vec(m, v).is_zero());
                CHECK(!v.is_zero());
            }
        }
    }
}

TEST_CASE("mat_vec basics") {
    CHECK(mat_vec(GF2Matrix::identity(2), GF2Vector::from_string("10")).to_string() == "10");
    CHECK(mat_vec(from_rows({"111"}), GF2Vector::from_string("111")).to_string() == "1");
    CHECK(mat_vec(from_rows({"111", "111"}), GF2Vector::from_string("000")).to_string() == "00");
}

TEST_CASE("rank equals rank of transpose on random matrices") {
    Rng rng(7);
    GF2Matrix m = random_matrix(200, 300, rng);
    CHECK(rank(m) == rank(m.transpose()));
}

TEST_CASE("column_submatrix_full_rank") {
    GF2Matrix i4 = GF2Matrix::identity(4);
    CHECK(column_submatrix_full_rank(i4, {}));
    CHECK(column_submatrix_full_rank(i4, {0, 2}));

    GF2Matrix dup = from_rows({"110", "110", "001"});
    CHECK(!column_submatrix_full_rank(dup, {0, 1}));
    CHECK(column_submatrix_full_rank(dup, {0, 2}));
    CHECK_THROWS_AS((void)column_submatrix_full_rank(dup, {5}), std::out_of_range);
}

TEST_CASE("eliminator incremental and batch semantics") {
    GF2Eliminator elim(4);
    CHECK(elim.try_add(GF2Vector::from_string("1100")));
    CHECK(elim.try_add(GF2Vector::from_string("0110")));
    CHECK(!elim.try_add(GF2Vector::from_string("1010")));  // sum of the first two
    CHECK(elim.rank() == 2);

    // Batch with an internal dependency must leave the basis untouched.
    CHECK(!elim.try_add_all({GF2Vector::from_string("0001"), GF2Vector::from_string("1101")}));
    CHECK(elim.rank() == 2);
    CHECK(elim.try_add_all({GF2Vector::from_string("0001"), GF2Vector::from_string("0011")}));
    CHECK(elim.rank() == 4);
}

TEST_CASE("dimension mismatches are contract violations") {
    CHECK_THROWS_AS((void)solve(GF2Matrix::identity(2), GF2Vector(3)), std::invalid_argument);
    CHECK_THROWS_AS((void)mat_vec(GF2Matrix::identity(2), GF2Vector(3)), std::invalid_argument);
}

TEST_CASE("vector string round trip and bit ops") {
    GF2Vector v = GF2Vector::from_string("01101");
    CHECK(v.popcount() == 3);
    CHECK(v.first_set() == 1);
    v.flip(0);
    CHECK(v.to_string() == "11101");
    CHECK(GF2Vector::from_string(v.to_string()) == v);
    CHECK_THROWS_AS((void)GF2Vector::from_string("01x"), std::invalid_argument);
}
