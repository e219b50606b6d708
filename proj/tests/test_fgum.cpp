#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <tuple>

#include "xorsatlab/fgum.hpp"
#include "xorsatlab/gf2.hpp"
#include "xorsatlab/rng.hpp"
#include "xorsatlab/theory.hpp"

using namespace xorsat;
using doctest::Approx;

TEST_CASE("trivial erasure rates") {
    Instance inst = sample_instance(3, 6, 40, 1);
    CHECK(simulate_block_erasure(inst, 0.0, 10, 1) == 1.0);
    CHECK(simulate_block_erasure(inst, 1.0, 10, 1) == 0.0);  // n < m
}

TEST_CASE("rank oracle agrees with exhaustive solution counting on tiny instances") {
    // m <= 24: brute force the erased-bit linear system and compare.
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 2 + int(rng.below(2));      // 2..3
        int D = k + 1 + int(rng.below(2));  // k+1..k+2
        std::size_t b = 1 + rng.below(2);
        Instance inst = sample_instance(k, D, b, rng.next_u64());
        if (inst.m() > 20) continue;
        std::vector<std::uint32_t> blocks;
        for (std::uint32_t j = 0; j < inst.b; ++j)
            if (rng.next_u64() & 1) blocks.push_back(j);

        // Erased rows of B independent <=> the homogeneous system restricted
        // to erased bits has only the zero solution.
        BlockPartition part = block_partition(inst);
        std::vector<std::uint32_t> erased_bits;
        for (std::uint32_t j : blocks)
            for (std::uint32_t w : part.blocks[j]) erased_bits.push_back(w);
        GF2Matrix B = inst.matrix();
        std::size_t nontrivial = 0;
        for (std::uint64_t pat = 1; pat < (std::uint64_t(1) << erased_bits.size()); ++pat) {
            GF2Vector combo(inst.n());
            bool zero = true;
            for (std::size_t i = 0; i < erased_bits.size(); ++i)
                if ((pat >> i) & 1) {
                    combo.xor_with(B.row_vector(erased_bits[i]));
                    zero = false;
                }
            (void)zero;
            if (combo.is_zero()) ++nontrivial;
        }
        CHECK(erasure_recoverable(inst, blocks) == (nontrivial == 0));
    }
}

TEST_CASE("recovery is monotone under nested erasure patterns") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Instance inst = sample_instance(3, 5, 30, rng.next_u64());
        std::vector<std::uint32_t> small, large;
        for (std::uint32_t j = 0; j < inst.b; ++j) {
            if (rng.next_u64() % 3 == 0) {
                small.push_back(j);
                large.push_back(j);
            } else if (rng.next_u64() % 3 == 0) {
                large.push_back(j);
            }
        }
        if (!erasure_recoverable(inst, large)) continue;
        CHECK(erasure_recoverable(inst, small));
    }
}

TEST_CASE("well below threshold recovery is near certain") {
    Instance inst = sample_instance(3, 6, 2000, 9);
    double rate = 0.9 * e_max(3, 6);
    CHECK(simulate_block_erasure(inst, rate, 200, 4) >= 0.99);
}

TEST_CASE("threshold scan crossing matches e_max") {
    double target = e_max(3, 6);  // ~0.3766
    std::vector<double> rates;
    for (double r = target - 0.03; r <= target + 0.03 + 1e-9; r += 0.01) rates.push_back(r);
    ThresholdCurve curve = threshold_scan(3, 6, 500, rates, 60, 11);
    double cross = crossing_at_half(curve);
    CHECK(std::isfinite(cross));
    CHECK(std::abs(cross - target) < 0.02);
    CHECK(curve.success_probs.front() > curve.success_probs.back());
}

TEST_CASE("transition sharpens with block count") {
    double target = e_max(3, 6);
    std::vector<double> rates;
    for (double r = target - 0.06; r <= target + 0.06 + 1e-9; r += 0.02) rates.push_back(r);
    auto width = [&](std::size_t b, std::uint64_t seed) {
        ThresholdCurve c = threshold_scan(3, 6, b, rates, 40, seed);
        double lo = rates.back(), hi = rates.front();
        for (std::size_t i = 0; i < c.success_probs.size(); ++i) {
            if (c.success_probs[i] > 0.9) lo = std::max(lo, c.erasure_rates[i]);
            if (c.success_probs[i] < 0.1) hi = std::min(hi, c.erasure_rates[i]);
        }
        return hi - lo;
    };
    CHECK(width(1500, 21) <= width(150, 22) + 1e-12);
}

TEST_CASE("fgum outcome distribution") {
    FgumOutcome zero = fgum_outcome_distribution(0.0, 5);
    CHECK(zero.p_success == Approx(0.0));
    CHECK(zero.per_block_satisfied_expectation == Approx(5.0));

    FgumOutcome d3 = fgum_outcome_distribution(0.5, 3);
    CHECK(d3.p_success == Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(d3.per_block_satisfied_expectation == Approx(2.5).epsilon(1e-12));

    double am = alpha_min(3, 6);
    FgumOutcome comp = fgum_outcome_distribution(am, 6);
    CHECK(comp.p_success == Approx(1.0 - e_max(3, 6)).epsilon(1e-10));
    CHECK(comp.per_block_satisfied_expectation == Approx(6.0 - am * 66.0 / 31.0).epsilon(1e-10));

    CHECK_THROWS_AS((void)fgum_outcome_distribution(0.95, 3), std::invalid_argument);
}

TEST_CASE("empirical erased fraction matches the rate") {
    Instance inst = sample_instance(3, 6, 400, 2);
    // Reuse the trial-level stream logic: measure via many single trials.
    double rate = 0.3;
    Rng root(8);
    double total = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        std::size_t cnt = 0;
        for (std::uint32_t j = 0; j < inst.b; ++j)
            if (rng.bernoulli(rate)) ++cnt;
        total += double(cnt) / inst.b;
    }
    CHECK(std::abs(total / trials - rate) < 0.01);
}

TEST_CASE("erasure oracle agrees with the reference check on both branches") {
    Rng root(33);
    // (3,4): low rates keep the residual small (dense branch); (7,8) at high
    // rates leaves a core larger than the null dimension (restriction branch).
    for (auto [k, D, rate] : {std::tuple{3, 4, 0.4}, {3, 4, 0.7}, {7, 8, 0.6}, {7, 8, 0.95}}) {
        Instance inst = sample_instance(k, D, 30, root.next_u64());
        ErasureOracle oracle(inst);
        for (int t = 0; t < 40; ++t) {
            Rng rng = root.split(100 * k + 10 * D + t);
            std::vector<std::uint32_t> blocks;
            for (std::uint32_t j = 0; j < inst.b; ++j)
                if (rng.bernoulli(rate)) blocks.push_back(j);
            CHECK(oracle.recoverable(blocks) == erasure_recoverable(inst, blocks));
        }
    }
}

TEST_CASE("pooled threshold scan is deterministic and near the annealed scan") {
    std::vector<double> rates = {0.25, 0.33, 0.41, 0.49};
    ThresholdCurve a = threshold_scan(3, 6, 150, rates, 120, 5, 4);
    ThresholdCurve b = threshold_scan(3, 6, 150, rates, 120, 5, 4);
    CHECK(a.success_probs == b.success_probs);
    ThresholdCurve fresh = threshold_scan(3, 6, 150, rates, 120, 5);
    for (std::size_t i = 0; i < rates.size(); ++i)
        CHECK(std::abs(a.success_probs[i] - fresh.success_probs[i]) <
              a.ci_halfwidth[i] + fresh.ci_halfwidth[i] + 0.05);
    for (std::size_t i = 1; i < a.success_probs.size(); ++i)
        CHECK(a.success_probs[i] <= a.success_probs[i - 1] + 0.15);
}
