#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xorsatlab/gf2.hpp"

namespace xorsat {

// A D-regular max-k-XORSAT instance from Gallager's ensemble G(k, D, b).
// B has m = D*b rows (constraints) and n = k*b columns (variables), with k
// ones per row and D ones per column. Layer i of the dual parity check matrix
// is determined by permutation perms[i]: constraint w contains variable
// i*b + j iff perms[i][w] lands in the j-th contiguous block [j*D, (j+1)*D).
struct Instance {
    int k = 0;
    int D = 0;
    std::size_t b = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint32_t>> perms;  // k bijections on [0, D*b)
    GF2Vector v;                                    // right-hand side, length m

    std::size_t m() const { return static_cast<std::size_t>(D) * b; }
    std::size_t n() const { return static_cast<std::size_t>(k) * b; }

    // Variable indices of constraint w, one per layer, in layer order.
    std::vector<std::uint32_t> check_variables(std::size_t w) const;

    // m x k: check_variables for every constraint.
    std::vector<std::vector<std::uint32_t>> adjacency() const;

    // n x D: constraints containing each variable, ascending.
    std::vector<std::vector<std::uint32_t>> variable_constraints() const;

    GF2Matrix matrix() const;  // B, dense bit-packed

    // Throws std::invalid_argument if any structural invariant is broken.
    void validate() const;
};

// Deterministic for a fixed seed: permutation i is drawn from sub-stream i,
// v from sub-stream k.
Instance sample_instance(int k, int D, std::size_t b, std::uint64_t seed);

// Identity permutations and v = 0; handy degenerate case for tests.
Instance make_identity_instance(int k, int D, std::size_t b);

// The m/D disjoint constraint blocks cut out by layer 0, following the
// "first m/D rows" convention. defining_variable[j] is the variable whose
// constraint set is exactly blocks[j].
struct BlockPartition {
    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<std::uint32_t> defining_variable;
};

BlockPartition block_partition(const Instance& inst);

// Exact number of simple cycles with ell constraint vertices and ell
// variable vertices in the Tanner graph. ell must be 2 or 3.
std::uint64_t count_short_cycles(const Instance& inst, int ell);

// Fraction of Tanner-graph vertices (constraints and variables) whose
// distance-2*ell neighborhood is acyclic.
double treelike_fraction(const Instance& inst, int ell);

// Canonical JSON encoding: {"k","D","b","seed","perms","v"}. perms are
// authoritative; B is always reconstructed.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace xorsat
