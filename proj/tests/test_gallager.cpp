#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "xorsatlab/gallager.hpp"

using namespace xorsat;

TEST_CASE("sampled instance structure") {
    Instance inst = sample_instance(3, 4, 2, 12345);
    CHECK(inst.m() == 8);
    CHECK(inst.n() == 6);
    inst.validate();

    GF2Matrix B = inst.matrix();
    for (std::size_t r = 0; r < B.rows(); ++r) {
        std::size_t w = 0;
        for (std::size_t c = 0; c < B.cols(); ++c) w += B.get(r, c);
        CHECK(w == 3);
    }
    for (std::size_t c = 0; c < B.cols(); ++c) {
        std::size_t w = 0;
        for (std::size_t r = 0; r < B.rows(); ++r) w += B.get(r, c);
        CHECK(w == 4);
    }
}

TEST_CASE("table 1 scale dimensions") {
    Instance inst = sample_instance(3, 4, 840, 1);
    CHECK(inst.n() == 2520);
    CHECK(inst.m() == 3360);
}

TEST_CASE("sampling is deterministic in the seed") {
    Instance a = sample_instance(3, 5, 20, 99);
    Instance b = sample_instance(3, 5, 20, 99);
    Instance c = sample_instance(3, 5, 20, 100);
    CHECK(a.perms == b.perms);
    CHECK(a.v == b.v);
    CHECK(a.perms != c.perms);
}

TEST_CASE("identity instance block partition") {
    Instance inst = make_identity_instance(3, 4, 2);
    BlockPartition part = block_partition(inst);
    REQUIRE(part.blocks.size() == 2);
    CHECK(part.blocks[0] == std::vector<std::uint32_t>({0, 1, 2, 3}));
    CHECK(part.blocks[1] == std::vector<std::uint32_t>({4, 5, 6, 7}));
    CHECK(part.defining_variable == std::vector<std::uint32_t>({0, 1}));
}

TEST_CASE("block partition invariants on sampled instances") {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
        Instance inst = sample_instance(3, 6, 30, seed);
        BlockPartition part = block_partition(inst);
        REQUIRE(part.blocks.size() == inst.b);
        std::set<std::uint32_t> all;
        auto cons = inst.variable_constraints();
        for (std::size_t j = 0; j < part.blocks.size(); ++j) {
            CHECK(part.blocks[j].size() == static_cast<std::size_t>(inst.D));
            for (std::uint32_t w : part.blocks[j]) all.insert(w);
            // The defining variable's constraint set equals the block.
            std::set<std::uint32_t> block(part.blocks[j].begin(), part.blocks[j].end());
            std::set<std::uint32_t> var_set(cons[part.defining_variable[j]].begin(),
                                            cons[part.defining_variable[j]].end());
            CHECK(block == var_set);
        }
        CHECK(all.size() == inst.m());
    }
}

TEST_CASE("k=2 auxiliary instance has b blocks") {
    Instance inst = sample_instance(2, 3, 10, 5);
    BlockPartition part = block_partition(inst);
    CHECK(part.blocks.size() == 10);
}

TEST_CASE("cycle counts on crafted instances") {
    // Identity perms, k=2: layers 0 and 1 define identical blocks, so every
    // block gives a pair of variables sharing exactly D constraints.
    Instance inst = make_identity_instance(2, 3, 4);
    // Each of the 4 blocks: two variables share 3 constraints -> C(3,2)=3.
    CHECK(count_short_cycles(inst, 2) == 12);

    CHECK_THROWS_AS((void)count_short_cycles(inst, 4), std::invalid_argument);
}

TEST_CASE("expected short-cycle bound, ell=2 and 3") {
    // Appendix bound E[N_ell] <= (4kD)^ell for b >= 4*ell/D.
    const int k = 3, D = 6;
    double sum2 = 0, sum3 = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        Instance inst = sample_instance(k, D, 50, 1000 + t);
        sum2 += static_cast<double>(count_short_cycles(inst, 2));
        sum3 += static_cast<double>(count_short_cycles(inst, 3));
    }
    CHECK(sum2 / trials <= 4.0 * 3 * 6 * 4.0 * 3 * 6);          // (4kD)^2
    CHECK(sum3 / trials <= 4.0 * 3 * 6 * 4.0 * 3 * 6 * 4 * 3 * 6);  // (4kD)^3
}

TEST_CASE("treelike fraction") {
    // A (2,3) identity instance is a disjoint union of theta-like multigraph
    // blocks; everything sits on a cycle at radius 2.
    Instance cyc = make_identity_instance(2, 3, 2);
    CHECK(treelike_fraction(cyc, 1) == 0.0);

    Instance big = sample_instance(3, 6, 2000, 4);
    CHECK(treelike_fraction(big, 1) >= 0.99);
}

TEST_CASE("json round trip") {
    Instance inst = sample_instance(3, 4, 5, 77);
    std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(back.k == inst.k);
    CHECK(back.D == inst.D);
    CHECK(back.b == inst.b);
    CHECK(back.seed == inst.seed);
    CHECK(back.perms == inst.perms);
    CHECK(back.v == inst.v);
    // Canonical field order.
    CHECK(text.rfind("{\"k\":", 0) == 0);
}

TEST_CASE("invalid parameters rejected") {
    CHECK_THROWS_AS((void)sample_instance(3, 3, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_instance(1, 4, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_instance(3, 4, 0, 0), std::invalid_argument);
}
