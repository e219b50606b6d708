#pragma once

#include <cstdint>

#include "xorsatlab/gallager.hpp"

namespace xorsat {

struct DEConfig {
    std::size_t population_size = 100000;
    std::size_t max_iters = 2000;
    double target_error = 1e-4;   // residual bit error treated as zero
    double bisection_tol = 1e-3;
    std::uint64_t seed = 2024;    // common random numbers across bisection points
};

struct BPResult {
    GF2Vector decoded;
    bool converged = false;
    std::size_t iterations = 0;
};

// Sum-product decoding of the dual code (bit degree k, check degree D) over
// BSC(crossover), flooding schedule, stop on zero syndrome.
BPResult bp_decode(const Instance& inst, const GF2Vector& received, double crossover,
                   std::size_t max_iters);

// BP threshold via population-dynamics density evolution, bisected over the
// crossover probability.
double de_threshold(int k, int D, const DEConfig& cfg);

// bp_score_from_threshold(de_threshold(k, D, cfg)).
double dqi_bp_score(int k, int D, const DEConfig& cfg);

}  // namespace xorsat
