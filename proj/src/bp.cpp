#include "xorsatlab/bp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "xorsatlab/rng.hpp"
#include "xorsatlab/theory.hpp"

namespace xorsat {

namespace {

constexpr double kLlrCap = 30.0;

double clamp_llr(double x) { return std::clamp(x, -kLlrCap, kLlrCap); }

}  // namespace

BPResult bp_decode(const Instance& inst, const GF2Vector& received, double crossover,
                   std::size_t max_iters) {
    if (received.size() != inst.m()) throw std::invalid_argument("bp_decode: received length != m");
    if (crossover <= 0.0 || crossover >= 0.5)
        throw std::invalid_argument("bp_decode: crossover outside (0, 1/2)");

    const std::size_t m = inst.m(), n = inst.n();
    const auto adj = inst.adjacency();                // bit -> its k checks
    const auto checks = inst.variable_constraints();  // check -> its D bits

    // Edge layout: grouped by check; bit_edges[w] lists the edge ids of bit w.
    std::vector<std::uint32_t> edge_bit;
    std::vector<std::uint32_t> check_begin(n + 1, 0);
    for (std::size_t c = 0; c < n; ++c) {
        check_begin[c + 1] = check_begin[c] + static_cast<std::uint32_t>(checks[c].size());
        for (std::uint32_t w : checks[c]) edge_bit.push_back(w);
    }
    std::vector<std::vector<std::uint32_t>> bit_edges(m);
    for (std::uint32_t e = 0; e < edge_bit.size(); ++e) bit_edges[edge_bit[e]].push_back(e);

    const double Lch = std::log((1.0 - crossover) / crossover);
    std::vector<double> channel(m);
    for (std::size_t w = 0; w < m; ++w) channel[w] = received.get(w) ? -Lch : Lch;

    std::vector<double> bit_to_check(edge_bit.size());
    std::vector<double> check_to_bit(edge_bit.size(), 0.0);
    for (std::uint32_t e = 0; e < edge_bit.size(); ++e) bit_to_check[e] = channel[edge_bit[e]];

    BPResult result;
    GF2Vector hard(m);
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        // Check pass: tanh rule with leave-one-out products.
        for (std::size_t c = 0; c < n; ++c) {
            const std::uint32_t lo = check_begin[c], hi = check_begin[c + 1];
            double prod = 1.0;
            bool zero = false;
            std::uint32_t zero_edge = 0;
            for (std::uint32_t e = lo; e < hi; ++e) {
                double t = std::tanh(0.5 * bit_to_check[e]);
                if (t == 0.0) {
                    if (zero) { prod = 0.0; }
                    zero = true;
                    zero_edge = e;
                } else {
                    prod *= t;
                }
            }
            for (std::uint32_t e = lo; e < hi; ++e) {
                double t = std::tanh(0.5 * bit_to_check[e]);
                double rest;
                if (zero) {
                    rest = (e == zero_edge) ? prod : 0.0;
                } else {
                    rest = prod / t;
                }
                rest = std::clamp(rest, -1.0 + 1e-15, 1.0 - 1e-15);
                check_to_bit[e] = clamp_llr(2.0 * std::atanh(rest));
            }
        }
        // Bit pass + hard decision.
        for (std::size_t w = 0; w < m; ++w) {
            double total = channel[w];
            for (std::uint32_t e : bit_edges[w]) total += check_to_bit[e];
            hard.set(w, total < 0.0);
            for (std::uint32_t e : bit_edges[w])
                bit_to_check[e] = clamp_llr(total - check_to_bit[e]);
        }
        // Syndrome check.
        bool clean = true;
        for (std::size_t c = 0; c < n && clean; ++c) {
            bool parity = false;
            for (std::uint32_t e = check_begin[c]; e < check_begin[c + 1]; ++e)
                parity ^= hard.get(edge_bit[e]);
            clean = !parity;
        }
        if (clean) {
            result.decoded = hard;
            result.converged = true;
            result.iterations = iter;
            return result;
        }
    }
    result.decoded = hard;
    result.converged = false;
    result.iterations = max_iters;
    return result;
}

namespace {

// Population-dynamics density evolution for the all-zero codeword on
// BSC(crossover). Returns true if the bit-to-check error probability drops
// below target within the iteration budget.
bool de_converges(int k, int D, double crossover, const DEConfig& cfg, std::uint64_t seed) {
    const std::size_t N = cfg.population_size;
    const double Lch = std::log((1.0 - crossover) / crossover);
    Rng rng(seed);

    std::vector<double> pop(N), tanh_pop(N), next(N);
    for (std::size_t i = 0; i < N; ++i) pop[i] = rng.bernoulli(crossover) ? -Lch : Lch;

    double best_error = 1.0;
    std::size_t best_iter = 0;
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        for (std::size_t i = 0; i < N; ++i) tanh_pop[i] = std::tanh(0.5 * pop[i]);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double msg = rng.bernoulli(crossover) ? -Lch : Lch;
            for (int j = 0; j < k - 1; ++j) {
                double prod = 1.0;
                for (int d = 0; d < D - 1; ++d) prod *= tanh_pop[rng.below(N)];
                prod = std::clamp(prod, -1.0 + 1e-15, 1.0 - 1e-15);
                msg += 2.0 * std::atanh(prod);
            }
            next[i] = clamp_llr(msg);
            if (next[i] <= 0.0) ++bad;
        }
        pop.swap(next);
        double error = static_cast<double>(bad) / static_cast<double>(N);
        if (error < cfg.target_error) return true;
        if (error < best_error - 1e-12) {
            best_error = error;
            best_iter = iter;
        } else if (iter - best_iter > 200) {
            return false;  // stalled above target
        }
    }
    return false;
}

}  // namespace

double de_threshold(int k, int D, const DEConfig& cfg) {
    if (cfg.population_size < 1000 || cfg.bisection_tol <= 0 || cfg.target_error <= 0)
        throw std::invalid_argument("de_threshold: bad config");
    double lo = 0.001, hi = 0.5;
    if (!de_converges(k, D, lo, cfg, cfg.seed)) return 0.0;
    while (hi - lo > cfg.bisection_tol) {
        double mid = 0.5 * (lo + hi);
        if (de_converges(k, D, mid, cfg, cfg.seed))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double dqi_bp_score(int k, int D, const DEConfig& cfg) {
    return bp_score_from_threshold(de_threshold(k, D, cfg));
}

}  // namespace xorsat
