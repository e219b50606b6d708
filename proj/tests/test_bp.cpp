#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xorsatlab/bp.hpp"
#include "xorsatlab/rng.hpp"
#include "xorsatlab/solvers.hpp"
#include "xorsatlab/theory.hpp"

using namespace xorsat;

namespace {

// Random codeword of the dual code ker(B^T): random combination of a
// nullspace basis.
GF2Vector random_codeword(const Instance& inst, Rng& rng) {
    auto sol = solve(inst.matrix().transpose(), GF2Vector(inst.n()));
    REQUIRE(sol.has_value());
    GF2Vector d(inst.m());
    for (const auto& basis : sol->nullspace)
        if (rng.next_u64() & 1) d.xor_with(basis);
    return d;
}

GF2Vector flip_bits(const GF2Vector& d, double p, Rng& rng) {
    GF2Vector out = d;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (rng.bernoulli(p)) out.flip(i);
    return out;
}

bool syndrome_zero(const Instance& inst, const GF2Vector& d) {
    auto checks = inst.variable_constraints();
    for (const auto& bits : checks) {
        bool parity = false;
        for (std::uint32_t w : bits) parity ^= d.get(w);
        if (parity) return false;
    }
    return true;
}

double block_success(int k, int D, std::size_t b, double crossover, int trials,
                     std::uint64_t seed, bool zero_codeword) {
    Rng root(seed);
    int good = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        Instance inst = sample_instance(k, D, b, rng.next_u64());
        GF2Vector d = zero_codeword ? GF2Vector(inst.m()) : random_codeword(inst, rng);
        GF2Vector received = flip_bits(d, crossover, rng);
        BPResult r = bp_decode(inst, received, crossover, 100);
        if (r.converged && r.decoded == d) ++good;
    }
    return double(good) / trials;
}

}  // namespace

TEST_CASE("clean zero codeword decodes immediately") {
    Instance inst = sample_instance(3, 6, 50, 1);
    BPResult r = bp_decode(inst, GF2Vector(inst.m()), 0.05, 10);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.decoded.is_zero());
}

TEST_CASE("converged output has zero syndrome") {
    Rng root(2);
    for (int t = 0; t < 10; ++t) {
        Rng rng = root.split(t);
        Instance inst = sample_instance(3, 6, 100, rng.next_u64());
        GF2Vector received = flip_bits(GF2Vector(inst.m()), 0.05, rng);
        BPResult r = bp_decode(inst, received, 0.05, 100);
        if (r.converged) CHECK(syndrome_zero(inst, r.decoded));
    }
}

TEST_CASE("below threshold decoding succeeds, above it fails") {
    CHECK(block_success(3, 6, 1000, 0.05, 40, 7, true) >= 0.95);
    CHECK(block_success(3, 6, 1000, 0.12, 40, 8, true) <= 0.1);
}

TEST_CASE("codeword translation symmetry") {
    double zero = block_success(3, 6, 500, 0.06, 60, 9, true);
    double random = block_success(3, 6, 500, 0.06, 60, 10, false);
    CHECK(std::abs(zero - random) < 0.15);  // overlapping binomial CIs
}

TEST_CASE("success probability grows with block length below threshold") {
    double small = block_success(3, 6, 300, 0.8 * 0.084, 60, 11, true);
    double large = block_success(3, 6, 2000, 0.8 * 0.084, 60, 12, true);
    CHECK(large >= small - 0.05);
    CHECK(large >= 0.95);
}

TEST_CASE("density evolution thresholds") {
    DEConfig cfg;
    cfg.population_size = 20000;
    cfg.max_iters = 800;
    cfg.bisection_tol = 2e-3;
    double t36 = de_threshold(3, 6, cfg);
    CHECK(std::abs(t36 - 0.084) < 0.004);
    double t34 = de_threshold(3, 4, cfg);
    CHECK(std::abs(t34 - 0.167) < 0.004);
}

TEST_CASE("threshold decreases with D at fixed k") {
    DEConfig cfg;
    cfg.population_size = 10000;
    cfg.max_iters = 500;
    cfg.bisection_tol = 2e-3;
    double prev = 1.0;
    for (int D = 4; D <= 8; ++D) {
        double t = de_threshold(3, D, cfg);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("dqi bp scores near the published values") {
    DEConfig cfg;
    cfg.population_size = 20000;
    cfg.max_iters = 800;
    cfg.bisection_tol = 2e-3;
    CHECK(std::abs(dqi_bp_score(3, 6, cfg) - 0.7776) < 0.006);
    CHECK(std::abs(dqi_bp_score(3, 4, cfg) - 0.8730) < 0.006);
}

TEST_CASE("input validation") {
    Instance inst = sample_instance(3, 4, 5, 1);
    CHECK_THROWS_AS((void)bp_decode(inst, GF2Vector(3), 0.05, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)bp_decode(inst, GF2Vector(inst.m()), 0.6, 10), std::invalid_argument);
}
