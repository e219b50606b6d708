#include "xorsatlab/regev.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace xorsat {

namespace {

constexpr double kNormTol = 1e-12;

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

double norm_sq(const std::vector<cplx>& psi) {
    double s = 0;
    for (const cplx& a : psi) s += std::norm(a);
    return s;
}

void check_norm(const std::vector<cplx>& psi, const char* where) {
    if (std::abs(norm_sq(psi) - 1.0) > kNormTol)
        throw std::logic_error(std::string("state norm drifted at ") + where);
}

// Orthonormal Hadamard butterflies on the m bits starting at `shift`.
void hadamard_register(std::vector<cplx>& psi, int shift, int m) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int b = 0; b < m; ++b) {
        const std::size_t stride = std::size_t(1) << (shift + b);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            if (i & stride) continue;
            cplx lo = psi[i], hi = psi[i | stride];
            psi[i] = (lo + hi) * inv_sqrt2;
            psi[i | stride] = (lo - hi) * inv_sqrt2;
        }
    }
}

// U(theta) = c1 + c2 S with S : out ^= table[second]; dagger conjugates.
void apply_decoder(std::vector<cplx>& psi, const DecoderSpec& dec, int second_shift,
                   int out_shift, bool dagger) {
    const std::uint32_t M = std::uint32_t(1) << dec.m;
    cplx phase = std::polar(1.0, M_PI * dec.theta);
    cplx c1 = (1.0 + phase) * 0.5, c2 = (1.0 - phase) * 0.5;
    if (dagger) {
        c1 = std::conj(c1);
        c2 = std::conj(c2);
    }
    for (std::size_t i = 0; i < psi.size(); ++i) {
        std::uint32_t s = (std::uint32_t(i) >> second_shift) & (M - 1);
        std::uint32_t t = dec.table[s];
        if (t == 0) continue;  // fixed points of S sit in the +1 eigenspace
        std::uint32_t o = (std::uint32_t(i) >> out_shift) & (M - 1);
        if (o > (o ^ t)) continue;
        std::size_t j = i ^ (std::size_t(t) << out_shift);
        cplx a = psi[i], b = psi[j];
        psi[i] = c1 * a + c2 * b;
        psi[j] = c1 * b + c2 * a;
    }
}

std::vector<std::uint32_t> column_masks(const GF2Matrix& B) {
    std::vector<std::uint32_t> cols(B.cols(), 0);
    for (std::size_t j = 0; j < B.cols(); ++j)
        for (std::size_t i = 0; i < B.rows(); ++i)
            if (B.get(i, j)) cols[j] |= std::uint32_t(1) << i;
    return cols;
}

std::vector<double> hamming_objective(int m) {
    std::vector<double> h(std::size_t(1) << m);
    for (std::size_t x = 0; x < h.size(); ++x)
        h[x] = 1.0 - double(std::popcount(std::uint32_t(x))) / m;
    return h;
}

void check_objective(const std::vector<double>& H, int m) {
    if (H.size() != std::size_t(1) << m)
        throw std::invalid_argument("objective diagonal has wrong length");
    for (double h : H)
        if (!(h >= 0.0 && h <= 1.0))
            throw std::invalid_argument("objective entries must lie in [0,1]");
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace

void BiasFunction::validate() const {
    if (m < 1 || m > 6) throw std::invalid_argument("bias: m must be in [1,6]");
    if (values.size() != std::size_t(1) << m)
        throw std::invalid_argument("bias: wrong number of amplitudes");
    double s = 0;
    for (const cplx& a : values) s += std::norm(a);
    if (std::abs(s - 1.0) > kNormTol)
        throw std::invalid_argument("bias: amplitudes are not normalized");
}

std::vector<cplx> BiasFunction::hadamard() const {
    std::vector<cplx> out = values;
    hadamard_register(out, 0, m);
    return out;
}

BiasFunction uniform_bias(int m) {
    BiasFunction P;
    P.m = m;
    P.values.assign(std::size_t(1) << m, 1.0 / std::sqrt(double(std::size_t(1) << m)));
    return P;
}

BiasFunction alpha_bias(int m, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha outside [0,1]");
    BiasFunction P;
    P.m = m;
    P.values.resize(std::size_t(1) << m);
    for (std::size_t y = 0; y < P.values.size(); ++y) {
        int w = std::popcount(std::uint32_t(y));
        P.values[y] = std::sqrt(std::pow(alpha, w) * std::pow(1.0 - alpha, m - w));
    }
    return P;
}

BiasFunction random_bias(int m, Rng& rng) {
    BiasFunction P;
    P.m = m;
    P.values.resize(std::size_t(1) << m);
    double s = 0;
    for (cplx& a : P.values) {
        a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
        s += std::norm(a);
    }
    for (cplx& a : P.values) a /= std::sqrt(s);
    return P;
}

void DecoderSpec::validate() const {
    if (m < 1 || m > 6) throw std::invalid_argument("decoder: m must be in [1,6]");
    if (g != 0) throw std::invalid_argument("decoder: lookup family uses g = 0");
    if (table.size() != std::size_t(1) << m)
        throw std::invalid_argument("decoder: wrong table length");
    for (std::uint32_t t : table)
        if (t >= std::uint32_t(1) << m)
            throw std::invalid_argument("decoder: table entry out of range");
    if (!std::isfinite(theta)) throw std::invalid_argument("decoder: theta not finite");
}

std::vector<std::uint32_t> dual_codewords(const GF2Matrix& B) {
    if (B.rows() < 1 || B.rows() > 6) throw std::invalid_argument("B must have 1..6 rows");
    if (rank(B) != B.cols()) throw std::invalid_argument("B is not full column rank");
    std::vector<std::uint32_t> cols = column_masks(B);
    std::vector<std::uint32_t> dual;
    for (std::uint32_t d = 0; d < (std::uint32_t(1) << B.rows()); ++d) {
        bool in = true;
        for (std::uint32_t c : cols)
            if (parity(d & c)) { in = false; break; }
        if (in) dual.push_back(d);
    }
    return dual;
}

std::vector<bool> code_indicator(const GF2Matrix& B) {
    std::vector<std::uint32_t> cols = column_masks(B);
    std::vector<bool> in(std::size_t(1) << B.rows(), false);
    for (std::uint32_t x = 0; x < (std::uint32_t(1) << B.cols()); ++x) {
        std::uint32_t c = 0;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if ((x >> j) & 1) c ^= cols[j];
        in[c] = true;
    }
    return in;
}

DecoderSpec perfect_decoder(const GF2Matrix& B) { return interpolated_decoder(B, 1.0); }

DecoderSpec interpolated_decoder(const GF2Matrix& B, double theta) {
    std::vector<std::uint32_t> dual = dual_codewords(B);
    DecoderSpec dec;
    dec.m = int(B.rows());
    dec.theta = theta;
    dec.table.resize(std::size_t(1) << dec.m);
    for (std::uint32_t y = 0; y < dec.table.size(); ++y) {
        int best = dec.m + 1;
        std::uint32_t arg = 0;
        for (std::uint32_t d : dual) {
            int dist = std::popcount(y ^ d);
            if (dist < best) { best = dist; arg = d; }
        }
        dec.table[y] = arg;
    }
    return dec;
}

DecoderSpec zero_decoder(const GF2Matrix& B) {
    DecoderSpec dec;
    dec.m = int(B.rows());
    dec.theta = 0.0;
    dec.table = perfect_decoder(B).table;
    return dec;
}

DecoderSpec corrupted_decoder(const GF2Matrix& B, int corruptions, double theta, Rng& rng) {
    std::vector<std::uint32_t> dual = dual_codewords(B);
    DecoderSpec dec = interpolated_decoder(B, theta);
    for (int c = 0; c < corruptions; ++c) {
        std::uint64_t y = rng.below(dec.table.size());
        dec.table[y] = dual[rng.below(dual.size())];
    }
    return dec;
}

EpsilonReport measure_epsilon(const GF2Matrix& B, const BiasFunction& P,
                              const DecoderSpec& dec) {
    P.validate();
    dec.validate();
    std::vector<std::uint32_t> dual = dual_codewords(B);
    const int m = dec.m;
    if (P.m != m || int(B.rows()) != m) throw std::invalid_argument("m mismatch");
    const std::size_t M = std::size_t(1) << m;
    const std::size_t G = std::size_t(1) << dec.g;
    std::vector<cplx> Pt = P.hadamard();

    EpsilonReport rep;
    for (std::uint32_t d : dual) {
        std::vector<cplx> psi(M * M * G, 0.0);
        for (std::size_t s = 0; s < M; ++s) psi[s] = Pt[s ^ d];
        check_norm(psi, "epsilon probe");
        apply_decoder(psi, dec, 0, m, false);
        double good = 0;
        for (std::size_t g = 0; g < G; ++g)
            for (std::size_t s = 0; s < M; ++s)
                good += std::norm(psi[s | (std::size_t(d) << m) | (g << (2 * m))]);
        rep.eps_per_codeword.push_back(1.0 - good);
        rep.eps += (1.0 - good) / double(dual.size());
    }
    rep.eps = std::max(0.0, std::min(1.0, rep.eps));
    return rep;
}

ReductionOutput run_reduction(const GF2Matrix& B, std::uint32_t v, const BiasFunction& P,
                              const DecoderSpec& dec) {
    P.validate();
    dec.validate();
    std::vector<std::uint32_t> dual = dual_codewords(B);
    const int m = dec.m;
    if (P.m != m || int(B.rows()) != m) throw std::invalid_argument("m mismatch");
    const std::size_t M = std::size_t(1) << m;
    const std::size_t G = std::size_t(1) << dec.g;
    std::vector<cplx> Pt = P.hadamard();

    // Registers: first | second | output | garbage, low bits first.
    std::vector<cplx> psi(M * M * M * G, 0.0);

    // Step 1: |C_perp> (x) Sum_e P~(e)|e>.
    const double n1 = 1.0 / std::sqrt(double(dual.size()));
    for (std::uint32_t d : dual)
        for (std::size_t e = 0; e < M; ++e) psi[d | (e << m)] = n1 * Pt[e];
    check_norm(psi, "step 1");

    // Step 2: Z^{-v} on the first register; over F2, chi_v(-d) = (-1)^{v.d}.
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (parity(v & (std::uint32_t(i) & (M - 1)))) psi[i] = -psi[i];
    check_norm(psi, "step 2");

    // Step 3: second ^= first.
    for (std::size_t i = 0; i < psi.size(); ++i) {
        std::uint32_t f = std::uint32_t(i) & (M - 1);
        std::uint32_t s = (std::uint32_t(i) >> m) & (M - 1);
        if (f && s < (s ^ f)) std::swap(psi[i], psi[i ^ (std::size_t(f) << m)]);
    }
    check_norm(psi, "step 3");

    // Step 4: append |0_anc> (already in the layout) and apply U_dec.
    apply_decoder(psi, dec, m, 2 * m, false);
    check_norm(psi, "step 4");

    // Step 5: postselect output == first.
    double pp = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        std::uint32_t f = std::uint32_t(i) & (M - 1);
        std::uint32_t o = (std::uint32_t(i) >> (2 * m)) & (M - 1);
        if (f != o)
            psi[i] = 0.0;
        else
            pp += std::norm(psi[i]);
    }
    if (pp < 1e-15) throw std::runtime_error("postselection never succeeds");
    const double scale = 1.0 / std::sqrt(pp);
    for (cplx& a : psi) a *= scale;

    ReductionOutput out;
    out.postselect_prob = pp;
    out.n_dec = 1.0 / std::sqrt(double(dual.size()) * pp);

    // Step 6: first ^= output (leaving zero), then drop the first register.
    std::vector<cplx> phi(M * M * G, 0.0);
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t o = 0; o < M; ++o)
            for (std::size_t s = 0; s < M; ++s)
                phi[s | (o << m) | (g << (2 * m))] =
                    psi[o | (s << m) | (o << (2 * m)) | (g << (3 * m))];
    check_norm(phi, "step 6");

    // Step 7: U_dec^dag on (second | output | garbage).
    apply_decoder(phi, dec, 0, m, true);
    check_norm(phi, "step 7");

    // Step 8: Z^{v} on the (new) first register.
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (parity(v & (std::uint32_t(i) & (M - 1)))) phi[i] = -phi[i];
    check_norm(phi, "step 8");
    out.phi_actual = phi;

    // Step 9: inverse QFT (= Hadamard) on the first register, then measure it.
    hadamard_register(phi, 0, m);
    check_norm(phi, "step 9");
    out.actual.assign(M, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i)
        out.actual[std::uint32_t(i) & (M - 1)] += std::norm(phi[i]);

    std::vector<bool> in_code = code_indicator(B);
    out.algo.assign(M, 0.0);
    double mass = 0;
    for (std::size_t x = 0; x < M; ++x)
        if (in_code[x]) {
            out.algo[x] = out.actual[x];
            mass += out.actual[x];
        }
    if (mass < 1e-15) throw std::runtime_error("no codeword mass in the output");
    for (double& p : out.algo) p /= mass;
    return out;
}

TargetOutput build_target(const GF2Matrix& B, std::uint32_t v, const BiasFunction& P,
                          const DecoderSpec& dec) {
    P.validate();
    std::vector<std::uint32_t> dual = dual_codewords(B);
    const int m = P.m;
    const std::size_t M = std::size_t(1) << m;
    const std::size_t G = std::size_t(1) << dec.g;
    std::vector<cplx> Pt = P.hadamard();

    TargetOutput out;
    out.phi_target.assign(M * M * G, 0.0);
    double nsq = 0;
    for (std::size_t x = 0; x < M; ++x) {
        cplx amp = 0.0;
        for (std::uint32_t d : dual) {
            std::uint32_t e = std::uint32_t(x) ^ d;
            amp += (parity(v & e) ? -1.0 : 1.0) * Pt[e];
        }
        out.phi_target[x] = amp;  // output and garbage stay |0>
        nsq += std::norm(amp);
    }
    out.n_target = 1.0 / std::sqrt(nsq);
    for (cplx& a : out.phi_target) a *= out.n_target;

    std::vector<cplx> tilde = out.phi_target;
    hadamard_register(tilde, 0, m);
    out.target.assign(M, 0.0);
    for (std::size_t i = 0; i < tilde.size(); ++i)
        out.target[std::uint32_t(i) & (M - 1)] += std::norm(tilde[i]);
    return out;
}

ErrorBoundReport verify_error_bound(const GF2Matrix& B, const BiasFunction& P,
                                    const DecoderSpec& dec,
                                    const std::vector<double>& H_obj) {
    const int m = P.m;
    check_objective(H_obj, m);
    const std::size_t M = std::size_t(1) << m;
    std::vector<double> Hc = hamming_objective(m);

    ErrorBoundReport rep;
    rep.eps = measure_epsilon(B, P, dec).eps;
    double shs = 0, shs_c = 0;
    for (std::size_t x = 0; x < M; ++x) {
        shs += std::norm(P.values[x]) * H_obj[x];
        shs_c += std::norm(P.values[x]) * Hc[x];
    }
    for (std::uint32_t v = 0; v < M; ++v) {
        ReductionOutput out = run_reduction(B, v, P, dec);
        for (std::size_t x = 0; x < M; ++x) {
            rep.lhs += out.algo[x] * H_obj[x ^ v] / double(M);
            rep.cor_lhs += out.algo[x] * Hc[x ^ v] / double(M);
        }
    }
    rep.rhs = shs - 2.0 * std::sqrt(rep.eps);
    rep.cor_rhs = shs_c - 2.0 * std::sqrt(rep.eps);
    rep.slack = rep.lhs - rep.rhs;
    rep.cor_slack = rep.cor_lhs - rep.cor_rhs;
    rep.pass = rep.slack >= -1e-9 && rep.cor_slack >= -1e-9;
    return rep;
}

DistanceBoundReport verify_distance_bounds(const GF2Matrix& B, const BiasFunction& P,
                                           const DecoderSpec& dec) {
    const std::size_t M = std::size_t(1) << P.m;
    std::vector<std::uint32_t> dual = dual_codewords(B);

    DistanceBoundReport rep;
    rep.eps = measure_epsilon(B, P, dec).eps;
    const double n_dec_pred = 1.0 / std::sqrt(double(dual.size()) * (1.0 - rep.eps));
    cplx lemma_sum = 0.0;
    for (std::uint32_t v = 0; v < M; ++v) {
        ReductionOutput out = run_reduction(B, v, P, dec);
        TargetOutput targ = build_target(B, v, P, dec);
        cplx inner = 0.0;
        for (std::size_t i = 0; i < out.phi_actual.size(); ++i)
            inner += std::conj(out.phi_actual[i]) * targ.phi_target[i];
        double td = std::sqrt(std::max(0.0, 1.0 - std::norm(inner)));
        rep.mean_trace_distance += td / double(M);
        rep.mean_tv_algo_actual += tv_distance(out.algo, out.actual) / double(M);
        rep.max_contractivity_gap =
            std::max(rep.max_contractivity_gap, tv_distance(out.actual, targ.target) - td);
        lemma_sum += inner / (out.n_dec * targ.n_target * double(M));
        rep.n_dec_residual = std::max(rep.n_dec_residual, std::abs(out.n_dec - n_dec_pred));
    }
    rep.trace_bound = std::sqrt(rep.eps);
    rep.tv_bound = std::pow(rep.eps, 0.25);
    rep.inner_product_residual =
        std::abs(lemma_sum - cplx(double(dual.size()) * (1.0 - rep.eps), 0.0));
    rep.pass = rep.mean_trace_distance <= rep.trace_bound + 1e-9 &&
               rep.mean_tv_algo_actual <= rep.tv_bound + 1e-9 &&
               rep.max_contractivity_gap <= 1e-9 && rep.inner_product_residual <= 1e-8 &&
               rep.n_dec_residual <= 1e-10;
    return rep;
}

double weighted_target_expectation(const GF2Matrix& B, const BiasFunction& P,
                                   const std::vector<double>& H_obj) {
    const int m = P.m;
    check_objective(H_obj, m);
    const std::size_t M = std::size_t(1) << m;
    std::vector<std::uint32_t> dual = dual_codewords(B);
    DecoderSpec layout;  // only provides the register layout (g = 0)
    layout.m = m;
    layout.table.assign(M, 0);

    double acc = 0;
    for (std::uint32_t v = 0; v < M; ++v) {
        TargetOutput targ = build_target(B, v, P, layout);
        double weight = 1.0 / (double(dual.size()) * targ.n_target * targ.n_target);
        double exp_h = 0;
        for (std::size_t x = 0; x < M; ++x) exp_h += targ.target[x] * H_obj[x ^ v];
        acc += weight * exp_h / double(M);
    }
    return acc;
}

GF2Matrix random_code_matrix(int m, int ncols, Rng& rng) {
    if (ncols > m) throw std::invalid_argument("need ncols <= m for full column rank");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GF2Matrix B(m, ncols);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < ncols; ++j) B.set(i, j, rng.bernoulli(0.5));
        if (rank(B) == std::size_t(ncols)) return B;
    }
    throw std::runtime_error("failed to sample a full-column-rank matrix");
}

}  // namespace xorsat
