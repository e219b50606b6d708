#include "xorsatlab/qaoa.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "xorsatlab/rng.hpp"

namespace xorsat {

namespace {

using cplx = std::complex<double>;

// In-place Walsh-Hadamard transform (self-inverse up to a factor of size()).
void wht(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                cplx u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

}  // namespace

void QaoaParams::validate() const {
    if (gammas.size() != betas.size())
        throw std::invalid_argument("QaoaParams: gamma/beta length mismatch");
    if (gammas.empty()) throw std::invalid_argument("QaoaParams: p >= 1 required");
    for (double g : gammas)
        if (!std::isfinite(g)) throw std::invalid_argument("QaoaParams: non-finite angle");
    for (double b : betas)
        if (!std::isfinite(b)) throw std::invalid_argument("QaoaParams: non-finite angle");
}

// Trajectory coordinates: bit r-1 = ket time slice r (r = 1..p), bit p =
// middle (measured) slice, bit p+r = bra time slice r. Bit value 0 means spin
// +1. A clause contributes phase exp(-i gamma_r u) on ket slice r and
// exp(+i gamma_r u) on bra slice r, where u is the product of its members'
// spins at that slice; the middle slice carries no phase.
double tree_energy(int k, int D, const QaoaParams& params, int max_p) {
    params.validate();
    if (k < 2 || D < 2) throw std::invalid_argument("tree_energy: k, D >= 2 required");
    const int p = params.p();
    if (p > max_p) throw std::invalid_argument("tree_energy: p above memory budget");

    const int ncoord = 2 * p + 1;
    const std::size_t N = std::size_t(1) << ncoord;

    // Single-qubit trajectory amplitude f(a): mixer transfer matrices on both
    // sides of the contour plus the 1/2 from the |+><+| endpoints.
    std::vector<cplx> f(N);
    for (std::size_t a = 0; a < N; ++a) {
        cplx val = 0.5;
        for (int r = 1; r <= p; ++r) {
            double beta = params.betas[r - 1];
            int ket_lo = (a >> (r - 1)) & 1;
            int ket_hi = r == p ? int((a >> p) & 1) : int((a >> r) & 1);
            val *= ket_lo == ket_hi ? cplx(std::cos(beta), 0) : cplx(0, -std::sin(beta));
            int bra_lo = (a >> (p + r)) & 1;
            int bra_hi = r == p ? int((a >> p) & 1) : int((a >> (p + r + 1)) & 1);
            val *= bra_lo == bra_hi ? cplx(std::cos(beta), 0) : cplx(0, std::sin(beta));
        }
        f[a] = val;
    }

    // Applies the clause-phase kernel to the XOR-convolution power of H:
    // out(a) = sum_c conv(c) * prod_r exp(-i g_r s(a_r) s(c_r)) * (bra conj).
    // Separable per coordinate: phase kernels on ket/bra slices, plain sum
    // over the (phase-free) middle coordinate.
    auto phase_pass = [&](std::vector<cplx>& h) {
        for (int bitpos = 0; bitpos < ncoord; ++bitpos) {
            std::size_t len = std::size_t(1) << bitpos;
            if (bitpos == p) {
                for (std::size_t i = 0; i < N; i += len << 1)
                    for (std::size_t j = i; j < i + len; ++j) {
                        cplx u = h[j], v = h[j + len];
                        h[j] = u + v;
                        h[j + len] = u + v;
                    }
                continue;
            }
            int r = bitpos < p ? bitpos + 1 : bitpos - p;
            double g = params.gammas[r - 1] * (bitpos < p ? 1.0 : -1.0);
            cplx same = std::exp(cplx(0, -g)), diff = std::exp(cplx(0, g));
            for (std::size_t i = 0; i < N; i += len << 1)
                for (std::size_t j = i; j < i + len; ++j) {
                    cplx u = h[j], v = h[j + len];
                    h[j] = same * u + diff * v;
                    h[j + len] = diff * u + same * v;
                }
        }
    };

    auto conv_power = [&](const std::vector<cplx>& h, int power) {
        std::vector<cplx> out = h;
        wht(out);
        for (auto& x : out) {
            cplx base = x, acc = base;
            for (int i = 1; i < power; ++i) acc *= base;
            x = acc;
        }
        wht(out);
        double scale = 1.0 / double(N);
        for (auto& x : out) x *= scale;
        return out;
    };

    // Leaf qubits sit at depth p+1; iterate the branch contraction p times.
    std::vector<cplx> H = f;
    for (int level = 0; level < p; ++level) {
        std::vector<cplx> G = conv_power(H, k - 1);
        phase_pass(G);
        for (std::size_t a = 0; a < N; ++a) {
            cplx g = G[a], acc = g;
            for (int i = 1; i < D - 1; ++i) acc *= g;
            H[a] = f[a] * acc;
        }
    }

    // Root clause: k-fold convolution of the depth-1 branches; the root's own
    // phases and the middle-slice spin product (the observable) are applied
    // directly to the spin-product distribution K.
    std::vector<cplx> K = conv_power(H, k);
    std::vector<std::array<cplx, 2>> ket(p), bra(p);
    for (int r = 1; r <= p; ++r) {
        double g = params.gammas[r - 1];
        ket[r - 1] = {std::exp(cplx(0, -g)), std::exp(cplx(0, g))};
        bra[r - 1] = {std::exp(cplx(0, g)), std::exp(cplx(0, -g))};
    }
    cplx obs = 0, norm = 0;
    for (std::size_t c = 0; c < N; ++c) {
        cplx phi = 1.0;
        for (int r = 0; r < p; ++r)
            phi *= ket[r][(c >> r) & 1] * bra[r][(c >> (p + 1 + r)) & 1];
        cplx term = K[c] * phi;
        norm += term;
        obs += ((c >> p) & 1) ? -term : term;
    }
    if (std::abs(norm - cplx(1, 0)) > 1e-8)
        throw std::logic_error("tree_energy: path-integral normalization broke");
    // Branch powers reach (D-1)^p(k-1)^p, so roundoff tracks the 1e-8
    // normalization guard rather than machine epsilon.
    if (std::abs(obs.imag()) > 1e-8)
        throw std::logic_error("tree_energy: non-real observable");
    return 0.5 * (1.0 + obs.real());
}

std::size_t lightcone_qubits(int k, int D, int p) {
    // k qubits at depth 1; each deeper level multiplies by (D-1)(k-1).
    std::size_t total = k, level = k;
    for (int d = 1; d <= p; ++d) {
        level *= std::size_t(D - 1) * (k - 1);
        total += level;
    }
    return total;
}

namespace {

// p = 1 brute force without materializing the state. The mixer is a tensor
// product and the observable touches only the root clause, so the final layer
// conjugates into the exact 2^k x 2^k operator M = (u^dag Z u)^(x)k on the
// root qubits. The sum over all 2^nq basis states then groups by the branch
// parities: each leaf configuration only enters through the per-root-qubit
// counts of odd branches, so group contributions are memoized.
double lightcone_direct_p1(int k, int D, double gamma, double beta, std::size_t nq,
                           const std::vector<std::uint64_t>& masks) {
    const int nb = D - 1;  // branches per root qubit
    // m = u^dag Z u for the mixer u = exp(-i beta X).
    const cplx c(std::cos(beta), 0), s(0, -std::sin(beta));
    const cplx u[2][2] = {{c, s}, {s, c}};
    const cplx zu[2][2] = {{u[0][0], u[0][1]}, {-u[1][0], -u[1][1]}};
    cplx m[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m[i][j] = std::conj(u[0][i]) * zu[0][j] + std::conj(u[1][i]) * zu[1][j];

    const std::size_t R = std::size_t(1) << k;
    std::vector<cplx> M(R * R);
    for (std::size_t a = 0; a < R; ++a)
        for (std::size_t b = 0; b < R; ++b) {
            cplx prod = 1.0;
            for (int i = 0; i < k; ++i) prod *= m[(a >> i) & 1][(b >> i) & 1];
            M[a * R + b] = prod;
        }

    // Group contribution per signature (c_0 .. c_{k-1}), c_i = number of odd
    // branches on root qubit i. S(a) = root spin product + sum_i branch terms.
    std::size_t nsig = 1;
    for (int i = 0; i < k; ++i) nsig *= std::size_t(nb + 1);
    std::vector<cplx> group(nsig);
    std::vector<int> counts(k);
    const double scale = std::pow(0.5, double(nq));
    for (std::size_t sig = 0; sig < nsig; ++sig) {
        std::size_t rest = sig;
        for (int i = 0; i < k; ++i) {
            counts[i] = int(rest % std::size_t(nb + 1));
            rest /= std::size_t(nb + 1);
        }
        int S[64];
        for (std::size_t a = 0; a < R; ++a) {
            int sum = (std::popcount(a) & 1) ? -1 : 1;
            for (int i = 0; i < k; ++i)
                sum += ((a >> i) & 1) ? 2 * counts[i] - nb : nb - 2 * counts[i];
            S[a] = sum;
        }
        cplx acc = 0.0;
        for (std::size_t a = 0; a < R; ++a)
            for (std::size_t b = 0; b < R; ++b)
                acc += std::polar(1.0, gamma * double(S[a] - S[b])) * M[a * R + b];
        group[sig] = acc * scale;
    }

    // Leaf masks per root qubit, shifted down past the k root bits.
    std::vector<std::uint64_t> leaf(std::size_t(k) * nb);
    for (int i = 0; i < k; ++i) {
        int found = 0;
        for (std::size_t ci = 1; ci < masks.size(); ++ci)
            if (masks[ci] & (std::uint64_t(1) << i))
                leaf[std::size_t(i) * nb + found++] = (masks[ci] >> k);
        if (found != nb) throw std::logic_error("lightcone_direct_p1: branch bookkeeping");
    }

    cplx obs = 0.0;
    const std::size_t nhi = std::size_t(1) << (nq - std::size_t(k));
    for (std::size_t hi = 0; hi < nhi; ++hi) {
        std::size_t sig = 0, base = 1;
        for (int i = 0; i < k; ++i) {
            int ci = 0;
            for (int bjx = 0; bjx < nb; ++bjx)
                ci += std::popcount(hi & leaf[std::size_t(i) * nb + bjx]) & 1;
            sig += std::size_t(ci) * base;
            base *= std::size_t(nb + 1);
        }
        obs += group[sig];
    }
    if (std::abs(obs.imag()) > 1e-9)
        throw std::logic_error("lightcone_direct_p1: non-real observable");
    return 0.5 * (1.0 + obs.real());
}

}  // namespace

double lightcone_statevector_energy(int k, int D, const QaoaParams& params, int max_qubits) {
    params.validate();
    const int p = params.p();
    std::size_t nq = lightcone_qubits(k, D, p);
    if (nq > static_cast<std::size_t>(max_qubits))
        throw std::invalid_argument("lightcone_statevector_energy: light cone too large");

    // Build the explicit tree: clause masks over qubit bits.
    std::vector<std::uint64_t> masks;
    std::vector<int> frontier(k);
    std::iota(frontier.begin(), frontier.end(), 0);
    int next_qubit = k;
    std::uint64_t root_mask = (std::uint64_t(1) << k) - 1;
    masks.push_back(root_mask);
    for (int depth = 1; depth <= p; ++depth) {
        std::vector<int> next_frontier;
        for (int q : frontier)
            for (int c = 0; c < D - 1; ++c) {
                std::uint64_t mask = std::uint64_t(1) << q;
                for (int j = 0; j < k - 1; ++j) {
                    mask |= std::uint64_t(1) << next_qubit;
                    next_frontier.push_back(next_qubit);
                    ++next_qubit;
                }
                masks.push_back(mask);
            }
        frontier = std::move(next_frontier);
    }
    if (static_cast<std::size_t>(next_qubit) != nq)
        throw std::logic_error("lightcone_statevector_energy: qubit count mismatch");

    if (p == 1 && k <= 6)
        return lightcone_direct_p1(k, D, params.gammas[0], params.betas[0], nq, masks);

    const std::size_t dim = std::size_t(1) << nq;
    // Per-basis-state sum of clause spin products, reused every layer.
    std::vector<std::int16_t> spin_sum(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        int s = 0;
        for (std::uint64_t mask : masks) s += (std::popcount(x & mask) & 1) ? -1 : 1;
        spin_sum[x] = static_cast<std::int16_t>(s);
    }

    std::vector<cplx> psi(dim, cplx(std::pow(0.5, nq * 0.5), 0));
    const int mclauses = static_cast<int>(masks.size());
    std::vector<cplx> phase_table(2 * mclauses + 1);
    for (int r = 1; r <= p; ++r) {
        double g = params.gammas[r - 1];
        for (int s = -mclauses; s <= mclauses; ++s)
            phase_table[s + mclauses] = std::exp(cplx(0, -g * s));
        for (std::size_t x = 0; x < dim; ++x) psi[x] *= phase_table[spin_sum[x] + mclauses];

        double beta = params.betas[r - 1];
        cplx c(std::cos(beta), 0), s(0, -std::sin(beta));
        for (std::size_t q = 0; q < nq; ++q) {
            std::size_t len = std::size_t(1) << q;
            for (std::size_t i = 0; i < dim; i += len << 1)
                for (std::size_t j = i; j < i + len; ++j) {
                    cplx u = psi[j], v = psi[j + len];
                    psi[j] = c * u + s * v;
                    psi[j + len] = s * u + c * v;
                }
        }
    }

    double obs = 0;
    for (std::size_t x = 0; x < dim; ++x) {
        double w = std::norm(psi[x]);
        obs += (std::popcount(x & root_mask) & 1) ? -w : w;
    }
    return 0.5 * (1.0 + obs);
}

namespace {

// Nelder-Mead maximization; returns best point, updates eval counter.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn, std::vector<double> x0,
    double step, std::size_t max_evals, std::size_t& evals) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = fn(pts[i]);
        ++evals;
    }

    std::size_t used = n + 1;
    while (used < max_evals) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        if (vals[best] - vals[worst] < 1e-10) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= double(n);

        auto blend = [&](double t) {
            std::vector<double> out(n);
            for (std::size_t d = 0; d < n; ++d)
                out[d] = centroid[d] + t * (centroid[d] - pts[worst][d]);
            return out;
        };

        std::vector<double> refl = blend(1.0);
        double frefl = fn(refl);
        ++used;
        if (frefl > vals[best]) {
            std::vector<double> exp_pt = blend(2.0);
            double fexp = fn(exp_pt);
            ++used;
            if (fexp > frefl) {
                pts[worst] = std::move(exp_pt);
                vals[worst] = fexp;
            } else {
                pts[worst] = std::move(refl);
                vals[worst] = frefl;
            }
        } else if (frefl > vals[second_worst]) {
            pts[worst] = std::move(refl);
            vals[worst] = frefl;
        } else {
            std::vector<double> contr = blend(frefl > vals[worst] ? 0.5 : -0.5);
            double fcontr = fn(contr);
            ++used;
            if (fcontr > std::max(vals[worst], frefl)) {
                pts[worst] = std::move(contr);
                vals[worst] = fcontr;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = 0.5 * (pts[i][d] + pts[best][d]);
                    vals[i] = fn(pts[i]);
                    ++used;
                }
            }
        }
    }
    evals += used - (n + 1);
    std::size_t best = std::size_t(
        std::max_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best]};
}

QaoaParams unpack(const std::vector<double>& x) {
    QaoaParams prm;
    std::size_t p = x.size() / 2;
    prm.gammas.assign(x.begin(), x.begin() + p);
    prm.betas.assign(x.begin() + p, x.end());
    return prm;
}

}  // namespace

TreeEvalResult optimize(int k, int D, int p, int restarts, std::uint64_t seed) {
    if (p < 1) throw std::invalid_argument("optimize: p >= 1 required");
    std::size_t evals = 0;
    auto objective = [&](const std::vector<double>& x) {
        ++evals;
        return tree_energy(k, D, unpack(x));
    };
    // evals is incremented inside objective; nelder_mead's own counter would
    // double count, so hand it a dummy.
    std::size_t dummy = 0;

    std::vector<std::vector<double>> starts;
    if (p > 1) {
        TreeEvalResult prev = optimize(k, D, p - 1, restarts, seed);
        evals += prev.optimizer_evals;
        // Zero-padding keeps the depth-(p-1) value reachable exactly.
        std::vector<double> padded;
        padded.insert(padded.end(), prev.params.gammas.begin(), prev.params.gammas.end());
        padded.push_back(0.0);
        padded.insert(padded.end(), prev.params.betas.begin(), prev.params.betas.end());
        padded.push_back(0.0);
        starts.push_back(padded);
        // INTERP-style stretch of the previous schedule onto p points.
        std::vector<double> interp(2 * p);
        for (int i = 0; i < p; ++i) {
            double t = p == 1 ? 0.0 : double(i) * (p - 2) / double(p - 1);
            int lo = std::min(int(t), p - 2);
            double frac = t - lo;
            interp[i] = (1 - frac) * prev.params.gammas[lo] +
                        frac * prev.params.gammas[std::min(lo + 1, p - 2)];
            interp[p + i] = (1 - frac) * prev.params.betas[lo] +
                            frac * prev.params.betas[std::min(lo + 1, p - 2)];
        }
        starts.push_back(interp);
    }
    Rng rng(seed + 0x51ull * p);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x(2 * p);
        for (int i = 0; i < p; ++i) {
            x[i] = (rng.uniform() - 0.5) * M_PI;        // gamma
            x[p + i] = (rng.uniform() - 0.5) * M_PI_2;  // beta
        }
        starts.push_back(x);
    }

    std::vector<double> best_x;
    double best_val = -1.0;
    for (const auto& s : starts) {
        auto [x, val] = nelder_mead(objective, s, 0.05, 250 * std::size_t(2 * p), dummy);
        if (val > best_val) {
            best_val = val;
            best_x = x;
        }
    }

    TreeEvalResult result;
    result.k = k;
    result.D = D;
    result.p = p;
    result.satisfied_fraction = best_val;
    result.params = unpack(best_x);
    result.optimizer_evals = evals;
    return result;
}

}  // namespace xorsat
