#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "xorsatlab/gf2.hpp"
#include "xorsatlab/rng.hpp"

namespace xorsat {

// Exact statevector verification of Regev's reduction on tiny binary codes.
// The code is C = {Bx} for a full-column-rank B with m = B.rows() <= 6; the
// dual C_perp = ker(B^T) is the code being decoded. q = 2 throughout, so the
// QFT is the register-wise Hadamard transform and characters are (-1)^{v.d}.

using cplx = std::complex<double>;

// Amplitude profile P over F2^m; Sum |P(x)|^2 = 1.
struct BiasFunction {
    int m = 0;
    std::vector<cplx> values;  // length 2^m, indexed by bit mask

    void validate() const;                 // size 2^m, unit norm within 1e-12
    std::vector<cplx> hadamard() const;    // P~ = H^{(x)m} P (orthonormal)
};

BiasFunction uniform_bias(int m);
// P_alpha(y) = sqrt(alpha^|y| (1-alpha)^(m-|y|)): each output bit flipped
// independently with probability alpha.
BiasFunction alpha_bias(int m, double alpha);
BiasFunction random_bias(int m, Rng& rng);

// Decoder unitary acting on (second (x) output (x) garbage). The family is the
// interpolation U(theta) = P_plus + e^{i pi theta} P_minus between the identity
// (theta = 0) and the table lookup involution S : |y>|o> -> |y>|o ^ table[y]>
// (theta = 1), where P_pm = (1 pm S)/2. S is a Hermitian permutation, so U is
// unitary for every theta. g = 0: lookup decoders need no garbage qubits.
struct DecoderSpec {
    int m = 0;
    int g = 0;
    std::vector<std::uint32_t> table;  // length 2^m, table[y] = decoded word
    double theta = 1.0;

    void validate() const;  // sizes, entries < 2^m, g == 0 for this family
};

// Minimum-distance lookup into C_perp = ker(B^T); ties broken toward the
// numerically smallest codeword.
DecoderSpec perfect_decoder(const GF2Matrix& B);
DecoderSpec interpolated_decoder(const GF2Matrix& B, double theta);
DecoderSpec zero_decoder(const GF2Matrix& B);  // identity: output stays 0^m
// Perfect lookup with `corruptions` random table entries redirected to random
// dual codewords, then interpolated by theta; spans a range of epsilon.
DecoderSpec corrupted_decoder(const GF2Matrix& B, int corruptions, double theta, Rng& rng);

// Dual codewords ker(B^T) as masks, sorted ascending. Throws if B is not full
// column rank.
std::vector<std::uint32_t> dual_codewords(const GF2Matrix& B);
// Indicator of C = {Bx} over F2^m.
std::vector<bool> code_indicator(const GF2Matrix& B);

struct EpsilonReport {
    double eps = 0;                        // mean over C_perp
    std::vector<double> eps_per_codeword;  // aligned with dual_codewords(B)
};

// eps_d = 1 - Pr[output register reads d after applying the decoder to
// Sum_e P~(e) |d+e> |0_out> |0_g>].
EpsilonReport measure_epsilon(const GF2Matrix& B, const BiasFunction& P,
                              const DecoderSpec& dec);

struct ReductionOutput {
    std::vector<double> algo;    // D_algo over F2^m (supported on C)
    std::vector<double> actual;  // D_actual over F2^m (full support)
    double postselect_prob = 0;  // step-5 success probability
    double n_dec = 0;            // measured normalization of the postselected state
    // |Phi_actual>: state after step 8 on (second | output | garbage),
    // length 2^{2m+g}.
    std::vector<cplx> phi_actual;
};

// Steps 1-9 exactly, for one shift v. Norm is asserted within 1e-12 after
// every unitary step; the postselection renormalizes.
ReductionOutput run_reduction(const GF2Matrix& B, std::uint32_t v,
                              const BiasFunction& P, const DecoderSpec& dec);

struct TargetOutput {
    std::vector<double> target;  // D_target over F2^m (supported on C)
    double n_target = 0;
    std::vector<cplx> phi_target;  // same register layout as phi_actual
};

TargetOutput build_target(const GF2Matrix& B, std::uint32_t v,
                          const BiasFunction& P, const DecoderSpec& dec);

struct ErrorBoundReport {
    double eps = 0;
    double lhs = 0;       // E_v[ E_{x ~ D_algo(v)}[ H(x - v) ] ]
    double rhs = 0;       // <S|H|S> - 2 sqrt(eps)
    double slack = 0;     // lhs - rhs
    double cor_lhs = 0;   // same with H(x) = 1 - |x|/m
    double cor_rhs = 0;
    double cor_slack = 0;
    bool pass = false;
};

// Exact sum over all 2^m shifts v; H_obj is the diagonal of the objective,
// entries in [0,1].
ErrorBoundReport verify_error_bound(const GF2Matrix& B, const BiasFunction& P,
                                    const DecoderSpec& dec,
                                    const std::vector<double>& H_obj);

struct DistanceBoundReport {
    double eps = 0;
    double mean_trace_distance = 0;  // E_v[ Delta(|Phi_actual>, |Phi_target>) ]
    double trace_bound = 0;          // sqrt(eps)
    double mean_tv_algo_actual = 0;  // E_v[ TV(D_algo, D_actual) ]
    double tv_bound = 0;             // eps^{1/4}
    // max over v of TV(D_actual, D_target) - trace distance (contractivity,
    // must be <= 0 up to roundoff).
    double max_contractivity_gap = 0;
    // |E_v[<Phi_a|Phi_t>/(N_dec N_targ)] - |C_perp|(1-eps)|  (inner-product lemma)
    double inner_product_residual = 0;
    // |measured N_dec - 1/sqrt(|C_perp|(1-eps))|, worst v
    double n_dec_residual = 0;
    bool pass = false;
};

DistanceBoundReport verify_distance_bounds(const GF2Matrix& B, const BiasFunction& P,
                                           const DecoderSpec& dec);

// Weighted target expectation of lem. diagH:
//   E_v[ w(v) E_{x ~ D_target(v)}[H(x-v)] ],  w(v) = 1/(|C_perp| N_target(v)^2),
// which equals <S|H|S> exactly; with P = P_alpha and H(x) = 1 - |x|/m this is
// 1 - alpha.
double weighted_target_expectation(const GF2Matrix& B, const BiasFunction& P,
                                   const std::vector<double>& H_obj);

// Full-column-rank random matrix, m rows by ncols.
GF2Matrix random_code_matrix(int m, int ncols, Rng& rng);

}  // namespace xorsat
