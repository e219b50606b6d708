#include "xorsatlab/solvers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xorsatlab/rng.hpp"

namespace xorsat {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Augmented equation row: coefficients in bits [0, n), right-hand side at bit n.
GF2Vector augmented_row(const Instance& inst, std::size_t w) {
    GF2Vector row(inst.n() + 1);
    for (std::uint32_t var : inst.check_variables(w)) row.set(var, true);
    if (inst.v.get(w)) row.set(inst.n(), true);
    return row;
}

// Echelon basis over augmented rows where independence is judged on the
// coefficient part only (a row reducing to just the RHS bit is dependent).
class EquationBasis {
public:
    explicit EquationBasis(std::size_t n) : n_(n), elim_(n + 1) {}

    bool try_add(GF2Vector row) {
        if (!elim_.try_add(std::move(row))) return false;
        if (elim_.pivot_columns().back() == n_) {  // only the RHS bit survived
            elim_.truncate(elim_.rank() - 1);
            return false;
        }
        return true;
    }

    bool try_add_all(const std::vector<GF2Vector>& batch) {
        std::size_t before = elim_.rank();
        for (const GF2Vector& row : batch) {
            GF2Vector copy = row;
            if (!try_add(std::move(copy))) {
                elim_.truncate(before);
                return false;
            }
        }
        return true;
    }

    std::size_t rank() const { return elim_.rank(); }

    // Back-substitution with free variables zero.
    GF2Vector solve() const {
        GF2Vector x(n_ + 1);
        const auto& pivots = elim_.pivot_columns();
        const auto& basis = elim_.basis();
        std::vector<std::size_t> order(pivots.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pivots[a] > pivots[b]; });
        for (std::size_t idx : order) {
            const GF2Vector& row = basis[idx];
            // Parity of (row . x) over the coefficient part beyond the pivot.
            std::size_t par = 0;
            for (std::size_t w = 0; w < row.words().size(); ++w)
                par ^= std::popcount(row.words()[w] & x.words()[w]);
            bool bit = (par & 1) ^ row.get(n_);
            x.set(pivots[idx], bit);
        }
        GF2Vector out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            if (x.get(i)) out.set(i, true);
        return out;
    }

private:
    std::size_t n_;
    GF2Eliminator elim_;
};

}  // namespace

std::size_t count_satisfied(const Instance& inst, const GF2Vector& assignment) {
    if (assignment.size() != inst.n())
        throw std::invalid_argument("count_satisfied: assignment length != n");
    std::size_t sat = 0;
    for (std::size_t w = 0; w < inst.m(); ++w) {
        bool parity = false;
        for (std::uint32_t var : inst.check_variables(w)) parity ^= assignment.get(var);
        if (parity == inst.v.get(w)) ++sat;
    }
    return sat;
}

namespace {

SolveResult finish(const Instance& inst, GF2Vector assignment, const char* solver,
                   std::uint64_t seed, std::uint64_t iters, Clock::time_point t0,
                   double packed_fraction = -1.0) {
    SolveResult r;
    r.satisfied = count_satisfied(inst, assignment);
    r.assignment = std::move(assignment);
    r.score = static_cast<double>(r.satisfied) / static_cast<double>(inst.m());
    r.solver = solver;
    r.seed = seed;
    r.sweeps_or_iters = iters;
    r.packed_fraction = packed_fraction;
    r.wall_time = seconds_since(t0);
    return r;
}

}  // namespace

SolveResult prange(const Instance& inst, std::uint64_t seed) {
    auto t0 = Clock::now();
    std::vector<std::uint32_t> order(inst.m());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(seed);
    shuffle(order, rng);

    EquationBasis basis(inst.n());
    for (std::uint32_t w : order) basis.try_add(augmented_row(inst, w));
    return finish(inst, basis.solve(), "prange", seed, basis.rank(), t0);
}

SolveResult turbo_prange(const Instance& inst, std::uint64_t seed, bool extra_greedy) {
    auto t0 = Clock::now();
    BlockPartition part = block_partition(inst);
    std::vector<std::uint32_t> order(part.blocks.size());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(seed);
    shuffle(order, rng);

    EquationBasis basis(inst.n());
    std::vector<bool> packed(part.blocks.size(), false);
    std::size_t packed_count = 0;
    for (std::uint32_t j : order) {
        std::vector<GF2Vector> batch;
        batch.reserve(inst.D);
        for (std::uint32_t w : part.blocks[j]) batch.push_back(augmented_row(inst, w));
        if (basis.try_add_all(batch)) {
            packed[j] = true;
            ++packed_count;
        }
    }
    GF2Vector x = basis.solve();

    // One greedy pass: flip the defining variable of each unsolved block iff
    // that strictly increases the block's satisfied count. Blocks are
    // disjoint, so flips cannot interact.
    GF2Vector bx = mat_vec(inst.matrix(), x);
    for (std::size_t j = 0; j < part.blocks.size(); ++j) {
        if (packed[j]) continue;
        int sat = 0;
        for (std::uint32_t w : part.blocks[j])
            if (bx.get(w) == inst.v.get(w)) ++sat;
        if (inst.D - sat > sat) x.flip(part.defining_variable[j]);
    }

    double packed_fraction =
        static_cast<double>(packed_count) * inst.D / static_cast<double>(inst.m());
    if (!extra_greedy)
        return finish(inst, std::move(x), "turbo-prange", seed, packed_count, t0, packed_fraction);

    SolveResult g = greedy(inst, x, seed);
    SolveResult r = finish(inst, std::move(g.assignment), "turbo-prange+greedy", seed,
                           packed_count, t0, packed_fraction);
    return r;
}

SolveResult greedy(const Instance& inst, const GF2Vector& start, std::uint64_t seed) {
    auto t0 = Clock::now();
    if (start.size() != inst.n()) throw std::invalid_argument("greedy: start length != n");
    const auto cons = inst.variable_constraints();
    GF2Vector x = start;
    GF2Vector bx = mat_vec(inst.matrix(), x);
    std::vector<std::uint32_t> order(inst.n());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(seed);

    std::uint64_t iters = 0;
    for (;;) {
        shuffle(order, rng);
        bool improved = false;
        for (std::uint32_t var : order) {
            int gain = 0;
            for (std::uint32_t w : cons[var])
                gain += (bx.get(w) == inst.v.get(w)) ? -1 : 1;
            if (gain > 0) {
                x.flip(var);
                for (std::uint32_t w : cons[var]) bx.flip(w);
                improved = true;
            }
        }
        ++iters;
        if (!improved) break;
    }
    return finish(inst, std::move(x), "greedy", seed, iters, t0);
}

SolveResult simulated_annealing(const Instance& inst, const SAConfig& cfg, std::uint64_t seed) {
    auto t0 = Clock::now();
    if (cfg.sweeps < 1 || cfg.beta_start > cfg.beta_end || cfg.seeds < 1)
        throw std::invalid_argument("simulated_annealing: bad config");
    if (cfg.schedule != "linear")
        throw std::invalid_argument("simulated_annealing: unknown schedule " + cfg.schedule);

    const auto cons = inst.variable_constraints();
    const std::size_t n = inst.n(), m = inst.m();
    const int D = inst.D;
    const GF2Matrix B = inst.matrix();

    SolveResult best;
    Rng root(seed);
    for (int chain = 0; chain < cfg.seeds; ++chain) {
        Rng rng = root.split(static_cast<std::uint64_t>(chain));
        GF2Vector x(n);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.next_u64() & 1) x.set(i, true);
        GF2Vector bx = mat_vec(B, x);
        std::vector<std::uint8_t> sat(m);
        std::size_t nsat = 0;
        for (std::size_t w = 0; w < m; ++w) {
            sat[w] = bx.get(w) == inst.v.get(w);
            nsat += sat[w];
        }
        GF2Vector best_x = x;
        std::size_t best_sat = nsat;

        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        // accept_threshold[d] = 2^64 * exp(-beta*d), d = increase in unsat count
        std::vector<std::uint64_t> accept(D + 1);

        for (std::uint64_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
            double t = cfg.sweeps == 1 ? 1.0
                                       : static_cast<double>(sweep) / double(cfg.sweeps - 1);
            double beta = cfg.beta_start + t * (cfg.beta_end - cfg.beta_start);
            for (int d = 1; d <= D; ++d) {
                double p = std::exp(-beta * d);
                accept[d] = p >= 1.0 ? ~0ull : static_cast<std::uint64_t>(p * 0x1p64);
            }
            shuffle(order, rng);
            for (std::uint32_t var : order) {
                int delta = 0;  // change in unsatisfied count if flipped
                for (std::uint32_t w : cons[var]) delta += sat[w] ? 1 : -1;
                if (delta > 0 && rng.next_u64() >= accept[delta]) continue;
                x.flip(var);
                for (std::uint32_t w : cons[var]) {
                    sat[w] ^= 1;
                    nsat += sat[w] ? 1 : -1;
                }
                if (nsat > best_sat) {
                    best_sat = nsat;
                    best_x = x;
                }
            }
        }
        if (best.assignment.empty() || best_sat > best.satisfied) {
            best = finish(inst, std::move(best_x), "sa", seed, cfg.sweeps, t0);
        }
    }
    best.wall_time = seconds_since(t0);
    return best;
}

}  // namespace xorsat
