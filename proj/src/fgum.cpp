#include "xorsatlab/fgum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xorsatlab/gf2.hpp"
#include "xorsatlab/rng.hpp"
#include "xorsatlab/theory.hpp"

namespace xorsat {

namespace {

// Marks the bits of the given blocks; returns the number of erased bits.
std::size_t mark_erased(const BlockPartition& part, const std::vector<std::uint32_t>& blocks,
                        std::vector<std::uint8_t>& erased) {
    std::size_t remaining = 0;
    for (std::uint32_t j : blocks) {
        if (j >= part.blocks.size()) throw std::out_of_range("erasure_recoverable: block index");
        for (std::uint32_t w : part.blocks[j]) {
            if (!erased[w]) ++remaining;
            erased[w] = 1;
        }
    }
    return remaining;
}

// Peeling stage: a parity check touching exactly one erased bit determines
// it. Mutates erased; returns the residual count.
std::size_t peel(const std::vector<std::vector<std::uint32_t>>& adj,
                 const std::vector<std::vector<std::uint32_t>>& checks, std::size_t n,
                 std::vector<std::uint8_t>& erased, std::size_t remaining) {
    const std::size_t m = erased.size();
    std::vector<std::uint32_t> touch(n, 0);
    for (std::size_t w = 0; w < m; ++w)
        if (erased[w])
            for (std::uint32_t c : adj[w]) ++touch[c];
    std::vector<std::uint32_t> stack;
    for (std::uint32_t c = 0; c < n; ++c)
        if (touch[c] == 1) stack.push_back(c);
    while (!stack.empty()) {
        std::uint32_t c = stack.back();
        stack.pop_back();
        if (touch[c] != 1) continue;
        std::uint32_t bit = std::uint32_t(m);
        for (std::uint32_t w : checks[c])
            if (erased[w]) { bit = w; break; }
        if (bit == m) continue;
        erased[bit] = 0;
        --remaining;
        for (std::uint32_t c2 : adj[bit]) {
            if (--touch[c2] == 1) stack.push_back(c2);
        }
    }
    return remaining;
}

}  // namespace

bool erasure_recoverable(const Instance& inst, const std::vector<std::uint32_t>& erased_blocks) {
    const std::size_t m = inst.m(), n = inst.n();
    BlockPartition part = block_partition(inst);
    std::vector<std::uint8_t> erased(m, 0);
    std::size_t remaining = mark_erased(part, erased_blocks, erased);
    if (remaining == 0) return true;

    const auto adj = inst.adjacency();                // bit -> checks it appears in
    const auto checks = inst.variable_constraints();  // check -> its D bits
    remaining = peel(adj, checks, n, erased, remaining);
    if (remaining == 0) return true;

    // Dense stage on the residual core; fail fast on the first dependency.
    GF2Eliminator elim(n);
    for (std::size_t w = 0; w < m; ++w) {
        if (!erased[w]) continue;
        GF2Vector row(n);
        for (std::uint32_t c : adj[w]) row.set(c, true);
        if (!elim.try_add(std::move(row))) return false;
    }
    return true;
}

ErasureOracle::ErasureOracle(const Instance& inst)
    : m_(inst.m()), n_(inst.n()), part_(block_partition(inst)), adj_(inst.adjacency()),
      checks_(inst.variable_constraints()) {
    // Left-null basis of B = ker(B^T); dimension m - rank(B).
    GF2Matrix Bt = inst.matrix().transpose();
    nullbasis_ = solve(Bt, GF2Vector(n_))->nullspace;
}

bool ErasureOracle::recoverable(const std::vector<std::uint32_t>& erased_blocks) const {
    std::vector<std::uint8_t> erased(m_, 0);
    std::size_t remaining = mark_erased(part_, erased_blocks, erased);
    if (remaining == 0) return true;
    std::vector<std::uint8_t> original = erased;
    remaining = peel(adj_, checks_, n_, erased, remaining);
    if (remaining == 0) return true;

    if (remaining <= nullbasis_.size()) {
        // Small residual core: dense fail-fast rank check, as in
        // erasure_recoverable.
        GF2Eliminator elim(n_);
        for (std::size_t w = 0; w < m_; ++w) {
            if (!erased[w]) continue;
            GF2Vector row(n_);
            for (std::uint32_t c : adj_[w]) row.set(c, true);
            if (!elim.try_add(std::move(row))) return false;
        }
        return true;
    }
    // Large core (high erasure rate): the erased rows of B are independent iff
    // the left-null basis stays full rank on the kept bits.
    std::vector<std::uint32_t> kept;
    for (std::size_t w = 0; w < m_; ++w)
        if (!original[w]) kept.push_back(std::uint32_t(w));
    GF2Eliminator elim(kept.size());
    for (const GF2Vector& y : nullbasis_) {
        GF2Vector restricted(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (y.get(kept[i])) restricted.set(i, true);
        if (!elim.try_add(std::move(restricted))) return false;
    }
    return true;
}

double simulate_block_erasure(const Instance& inst, double erasure_rate, std::size_t trials,
                              std::uint64_t seed) {
    if (erasure_rate < 0.0 || erasure_rate > 1.0)
        throw std::invalid_argument("simulate_block_erasure: rate outside [0,1]");
    Rng root(seed);
    std::size_t successes = 0;
    std::vector<std::uint32_t> blocks;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = root.split(t);
        blocks.clear();
        for (std::uint32_t j = 0; j < inst.b; ++j)
            if (rng.bernoulli(erasure_rate)) blocks.push_back(j);
        if (erasure_recoverable(inst, blocks)) ++successes;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
}

ThresholdCurve threshold_scan(int k, int D, std::size_t b, const std::vector<double>& rates,
                              std::size_t trials, std::uint64_t seed) {
    for (std::size_t i = 1; i < rates.size(); ++i)
        if (rates[i] < rates[i - 1])
            throw std::invalid_argument("threshold_scan: rates must be ascending");
    ThresholdCurve curve;
    curve.b = b;
    curve.trials_per_point = trials;
    Rng root(seed);
    std::vector<std::uint32_t> blocks;
    for (std::size_t ri = 0; ri < rates.size(); ++ri) {
        std::size_t successes = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = root.split(ri * trials + t);
            Instance inst = sample_instance(k, D, b, rng.next_u64());
            blocks.clear();
            for (std::uint32_t j = 0; j < b; ++j)
                if (rng.bernoulli(rates[ri])) blocks.push_back(j);
            if (erasure_recoverable(inst, blocks)) ++successes;
        }
        double p = static_cast<double>(successes) / static_cast<double>(trials);
        curve.erasure_rates.push_back(rates[ri]);
        curve.success_probs.push_back(p);
        curve.ci_halfwidth.push_back(1.96 * std::sqrt(p * (1.0 - p) / trials));
    }
    return curve;
}

ThresholdCurve threshold_scan(int k, int D, std::size_t b, const std::vector<double>& rates,
                              std::size_t trials, std::uint64_t seed,
                              std::size_t instance_pool) {
    for (std::size_t i = 1; i < rates.size(); ++i)
        if (rates[i] < rates[i - 1])
            throw std::invalid_argument("threshold_scan: rates must be ascending");
    if (instance_pool == 0) throw std::invalid_argument("threshold_scan: empty instance pool");
    Rng root(seed);
    std::vector<ErasureOracle> pool;
    pool.reserve(instance_pool);
    for (std::size_t i = 0; i < instance_pool; ++i)
        pool.emplace_back(sample_instance(k, D, b, root.split(i).next_u64()));
    ThresholdCurve curve;
    curve.b = b;
    curve.trials_per_point = trials;
    std::vector<std::uint32_t> blocks;
    for (std::size_t ri = 0; ri < rates.size(); ++ri) {
        std::size_t successes = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = root.split(instance_pool + ri * trials + t);
            blocks.clear();
            for (std::uint32_t j = 0; j < b; ++j)
                if (rng.bernoulli(rates[ri])) blocks.push_back(j);
            if (pool[t % instance_pool].recoverable(blocks)) ++successes;
        }
        double p = static_cast<double>(successes) / static_cast<double>(trials);
        curve.erasure_rates.push_back(rates[ri]);
        curve.success_probs.push_back(p);
        curve.ci_halfwidth.push_back(1.96 * std::sqrt(p * (1.0 - p) / trials));
    }
    return curve;
}

double crossing_at_half(const ThresholdCurve& curve) {
    for (std::size_t i = 1; i < curve.success_probs.size(); ++i) {
        double a = curve.success_probs[i - 1], b = curve.success_probs[i];
        if ((a - 0.5) * (b - 0.5) <= 0.0 && a != b) {
            double t = (a - 0.5) / (a - b);
            return curve.erasure_rates[i - 1] +
                   t * (curve.erasure_rates[i] - curve.erasure_rates[i - 1]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

FgumOutcome fgum_outcome_distribution(double alpha, int D) {
    FgumOutcome out;
    out.p_success = p0(alpha, D);  // validates the alpha range
    out.per_block_satisfied_expectation = D - alpha * i_hat_star(D);
    return out;
}

}  // namespace xorsat
