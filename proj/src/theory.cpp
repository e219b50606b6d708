#include "xorsatlab/theory.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xorsat {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    long long v = 1;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    __int128 g = gcd128(num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
double Rational::to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

double alpha_perp(double alpha) {
    if (alpha < 0.0 || alpha > 0.5) throw std::invalid_argument("alpha_perp: alpha outside [0, 1/2]");
    return 0.5 - std::sqrt(alpha * (1.0 - alpha));
}

double bp_score_from_threshold(double eps_star) {
    if (eps_star < 0.0 || eps_star > 0.5)
        throw std::invalid_argument("bp_score_from_threshold: eps outside [0, 1/2]");
    return 0.5 + std::sqrt(eps_star * (1.0 - eps_star));
}

IDSet build_ID(int D) {
    if (D < 2) throw std::invalid_argument("build_ID: D >= 2 required");
    if (D > 30) throw std::invalid_argument("build_ID: D too large for explicit enumeration");
    IDSet s;
    s.D = D;
    const std::uint32_t limit = 1u << D;
    if (D % 2 == 1) {
        const int cutoff = (D - 1) / 2;
        for (std::uint32_t w = 0; w < limit; ++w)
            if (std::popcount(w) <= cutoff) s.members.push_back(w);
    } else {
        const int cutoff = D / 2 - 1;
        for (std::uint32_t w = 0; w < limit; ++w) {
            int wt = std::popcount(w);
            if (wt <= cutoff) {
                s.members.push_back(w);
            } else if (wt == D / 2 && !(w >> (D - 1))) {
                // Lexicographic half of the balanced words: top bit zero.
                s.members.push_back(w);
                s.j_split.push_back(w);
            }
        }
    }
    return s;
}

Rational i_hat_star_exact(int D) {
    if (D < 2 || D > 24) throw std::invalid_argument("i_hat_star_exact: D outside [2, 24]");
    // Doubled numerator/denominator keep the even-D half-counts integral.
    __int128 num2 = 0, den2 = 0;
    if (D % 2 == 1) {
        for (int w = 1; w <= (D - 1) / 2; ++w) {
            long long c = binom(D, w);
            num2 += static_cast<__int128>(2) * c * w;
            den2 += static_cast<__int128>(2) * c;
        }
    } else {
        for (int w = 1; w <= D / 2 - 1; ++w) {
            long long c = binom(D, w);
            num2 += static_cast<__int128>(2) * c * w;
            den2 += static_cast<__int128>(2) * c;
        }
        long long cb = binom(D, D / 2);
        num2 += static_cast<__int128>(cb) * (D / 2);
        den2 += cb;
    }
    return Rational(num2, den2);
}

Rational sigma_D_exact(int D) {
    if (D < 1 || D > 24) throw std::invalid_argument("sigma_D_exact: D outside [1, 24]");
    __int128 sum = 0;
    for (int s = 0; s <= D; ++s)
        sum += static_cast<__int128>(binom(D, s)) * std::max(s, D - s);
    return Rational(sum, static_cast<__int128>(1) << D);
}

double i_hat_star(int D) { return i_hat_star_exact(D).to_double(); }
double sigma_D(int D) { return sigma_D_exact(D).to_double(); }

double e_max(int k, int D) {
    if (k < 3 || D <= k) throw std::invalid_argument("e_max: need 3 <= k < D");
    auto g = [&](double e) {
        return e - e / D - (double(k - 1) / D) * (1.0 - std::pow(1.0 - e, D));
    };
    // g(1) = (D-k)/D > 0; scan down for the sign change above the root at 0.
    double hi = 1.0, lo = -1.0;
    for (double e = 1.0 - 1e-3; e > 1e-9; e -= 1e-3) {
        if (g(e) < 0.0) { lo = e; break; }
        hi = e;
    }
    if (lo < 0.0) throw std::runtime_error("e_max: no nontrivial root found");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double alpha_min(int k, int D) {
    return (1.0 - e_max(k, D)) * (1.0 - std::pow(2.0, 1 - D));
}

double p0(double alpha, int D) {
    const double bound = 1.0 - std::pow(2.0, 1 - D);
    if (alpha < 0.0 || alpha > bound + 1e-12)
        throw std::invalid_argument("p0: alpha above measurement-validity bound");
    const double half = std::pow(2.0, D - 1);
    return alpha * half / (half - 1.0);
}

double fgum_score(int k, int D) {
    return 1.0 - (1.0 - e_max(k, D)) * (1.0 - std::pow(2.0, 1 - D)) * i_hat_star(D) / D;
}

double turbo_prange_score(int k, int D) {
    double e = e_max(k, D);
    return e + (sigma_D(D) / D) * (1.0 - e);
}

double prange_score(int k, int D) {
    if (k >= D) throw std::invalid_argument("prange_score: need k < D");
    return (1.0 + double(k) / D) / 2.0;
}

double x_k(int k) {
    if (k < 3) throw std::invalid_argument("x_k: k >= 3 required");
    auto f = [&](double x) { return x - (k - 1) * (1.0 - std::exp(-x)); };
    double lo = 0.1, hi = static_cast<double>(k);
    if (f(lo) >= 0.0 || f(hi) <= 0.0) throw std::runtime_error("x_k: bracket failed");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

TheoryReport theory_report(int k, int D) {
    TheoryReport r;
    r.k = k;
    r.D = D;
    r.e_max = e_max(k, D);
    r.alpha_min = (1.0 - r.e_max) * (1.0 - std::pow(2.0, 1 - D));
    r.p0 = p0(r.alpha_min, D);
    r.i_hat_star = i_hat_star(D);
    r.sigma_D = sigma_D(D);
    r.fgum_score = 1.0 - (1.0 - r.e_max) * (1.0 - std::pow(2.0, 1 - D)) * r.i_hat_star / D;
    r.turbo_prange_score = r.e_max + (r.sigma_D / D) * (1.0 - r.e_max);
    r.prange_score = prange_score(k, D);
    return r;
}

double qaoa_nu14_scaled(int k) {
    // nu_14^[k] * sqrt(k/2), depth-14 constants from the published table.
    switch (k) {
        case 3: return 0.7865;
        case 4: return 0.8666;
        case 5: return 0.9243;
        case 6: return 0.9686;
        default: throw std::invalid_argument("qaoa_nu14_scaled: k outside {3..6}");
    }
}

AsymptoticComparison asymptotic_comparison(int k, int D, int p, double nu) {
    (void)p;
    AsymptoticComparison c;
    c.qaoa_estimate = 0.5 + nu * std::sqrt(double(k) / (2.0 * (D - 1)));
    c.fgum_estimate = 0.5 + 1.0 / std::sqrt(2.0 * std::numbers::pi * D);
    return c;
}

double expected_equations(double nu, int k, int D, double m) {
    // E1 + E3 from the erasure-counting argument; E2 vanishes.
    return nu / D + (k - 1) * (m / D) * (1.0 - std::pow(1.0 - nu / m, D));
}

}  // namespace xorsat
