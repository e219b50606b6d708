#pragma once

#include <cstdint>
#include <string>

#include "xorsatlab/gallager.hpp"
#include "xorsatlab/gf2.hpp"

namespace xorsat {

struct SolveResult {
    GF2Vector assignment;          // length n
    std::size_t satisfied = 0;     // recounted independently before returning
    double score = 0;              // satisfied / m
    std::string solver;
    std::uint64_t seed = 0;
    std::uint64_t sweeps_or_iters = 0;
    double wall_time = 0;          // seconds
    double packed_fraction = -1;   // turbo-prange only: nu/m
};

struct SAConfig {
    std::uint64_t sweeps = 10000;
    double beta_start = 0.2;
    double beta_end = 4.0;
    int seeds = 4;
    std::string schedule = "linear";
};

// Maximal independent equation set in seed-shuffled row order, solved
// exactly; free variables zero.
SolveResult prange(const Instance& inst, std::uint64_t seed);

// Packs whole partition blocks (all-or-nothing) while independent, solves the
// packed equations, then one greedy pass over defining variables of unsolved
// blocks. extra_greedy continues to a full local optimum (beyond the analyzed
// algorithm; off by default).
SolveResult turbo_prange(const Instance& inst, std::uint64_t seed, bool extra_greedy = false);

// Metropolis single-flip annealing, n proposals per sweep in shuffled order,
// linear beta ramp; runs cfg.seeds independent chains from sub-streams of
// seed and returns the best.
SolveResult simulated_annealing(const Instance& inst, const SAConfig& cfg, std::uint64_t seed);

// Plain positive-gain bit flips to a local optimum.
SolveResult greedy(const Instance& inst, const GF2Vector& start, std::uint64_t seed);

// |B x - v| complement: number of satisfied constraints.
std::size_t count_satisfied(const Instance& inst, const GF2Vector& assignment);

}  // namespace xorsat
