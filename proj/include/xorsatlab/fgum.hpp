#pragma once

#include <cstdint>
#include <vector>

#include "xorsatlab/gallager.hpp"

namespace xorsat {

struct ThresholdCurve {
    std::vector<double> erasure_rates;
    std::vector<double> success_probs;
    std::vector<double> ci_halfwidth;  // 95% binomial CI per point
    std::size_t b = 0;
    std::size_t trials_per_point = 0;
};

// True iff erasing exactly the given blocks leaves the codeword uniquely
// recoverable: the erased columns of B^T must be linearly independent.
// Peeling (checks touching a single erased bit) first, dense rank on the
// residual core; the two-stage check is exactly equivalent to the full rank
// condition because weight-1 pivots cause no fill-in.
bool erasure_recoverable(const Instance& inst, const std::vector<std::uint32_t>& erased_blocks);

// Monte Carlo over i.i.d. block erasures on a fixed instance.
double simulate_block_erasure(const Instance& inst, double erasure_rate, std::size_t trials,
                              std::uint64_t seed);

// Amortized per-instance tester. Erasing block set E is recoverable iff the
// rows of B indexed by the erased bits are independent, i.e. iff no nonzero
// left-null vector of B is supported inside E; the left-null basis (dimension
// nu = m - rank B) is computed once, after which each pattern costs a rank
// check of the basis restricted to the kept bits. recoverable() peels first
// and picks whichever of the dense-residual / null-restriction checks is
// cheaper, so it is exactly equivalent to erasure_recoverable.
class ErasureOracle {
public:
    explicit ErasureOracle(const Instance& inst);
    bool recoverable(const std::vector<std::uint32_t>& erased_blocks) const;
    std::size_t null_dim() const { return nullbasis_.size(); }

private:
    std::size_t m_ = 0, n_ = 0;
    BlockPartition part_;
    std::vector<std::vector<std::uint32_t>> adj_;     // bit -> checks
    std::vector<std::vector<std::uint32_t>> checks_;  // check -> bits
    std::vector<GF2Vector> nullbasis_;                // left-null basis of B, length m
};

// Annealed scan: a fresh instance per trial. rates must be sorted ascending.
ThresholdCurve threshold_scan(int k, int D, std::size_t b, const std::vector<double>& rates,
                              std::size_t trials, std::uint64_t seed);

// Pooled scan: instance_pool instances are sampled once and shared across all
// rates through ErasureOracle (trial t uses instance t mod pool), amortizing
// the left-null computation. Statistically interchangeable with the annealed
// scan at large b.
ThresholdCurve threshold_scan(int k, int D, std::size_t b, const std::vector<double>& rates,
                              std::size_t trials, std::uint64_t seed,
                              std::size_t instance_pool);

// Linear interpolation of the success-0.5 crossing; NaN if the curve never
// crosses.
double crossing_at_half(const ThresholdCurve& curve);

struct FgumOutcome {
    double p_success;                     // p0(alpha, D)
    double per_block_satisfied_expectation;  // D - alpha * I*_D
};

FgumOutcome fgum_outcome_distribution(double alpha, int D);

}  // namespace xorsat
