#pragma once

#include <cstdint>
#include <vector>

namespace xorsat {

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int p() const { return static_cast<int>(gammas.size()); }
    void validate() const;  // equal lengths, finite angles
};

struct TreeEvalResult {
    int k = 0, D = 0, p = 0;
    double satisfied_fraction = 0;
    QaoaParams params;
    std::size_t optimizer_evals = 0;
};

// Expected satisfaction of the root constraint on the infinite
// (D,k)-biregular tree, via the collapsed-branch trajectory iteration.
// Cost O(p^2 4^p) time, O(4^p) memory, independent of k and D.
double tree_energy(int k, int D, const QaoaParams& params, int max_p = 10);

// Exact brute-force evaluation of the explicit depth-p light cone of the
// root constraint; validation oracle for tree_energy. p >= 2 runs a dense
// statevector simulation; p = 1 sums over all basis states directly with the
// final mixer folded into the root observable, which keeps 27-qubit cones
// (k=3, D=5) affordable.
double lightcone_statevector_energy(int k, int D, const QaoaParams& params, int max_qubits = 27);

// Number of qubits in the depth-p light cone (k + k(D-1)(k-1) at p=1, ...).
std::size_t lightcone_qubits(int k, int D, int p);

// Multi-start derivative-free maximization of tree_energy over 2p angles;
// warm-starts from the optimized depth p-1 point, so the best value is
// nondecreasing in p. Deterministic per seed.
TreeEvalResult optimize(int k, int D, int p, int restarts, std::uint64_t seed);

}  // namespace xorsat
