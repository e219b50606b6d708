#pragma once

#include <cstdint>
#include <vector>

namespace xorsat {

// Exact rational on top of __int128; only what the sigma_D / I*_D identity
// checks need (D <= 24 keeps every intermediate far from overflow).
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(__int128 n, __int128 d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    double to_double() const;
};

// Coset-leader set I_D: 2^{D-1} words covering F2^D under complement-union
// with minimal total weight. For even D the balanced words are split by the
// lexicographic rule (top bit zero).
struct IDSet {
    int D = 0;
    std::vector<std::uint32_t> members;
    std::vector<std::uint32_t> j_split;  // empty for odd D
};

struct TheoryReport {
    int k = 0, D = 0;
    double e_max = 0;
    double alpha_min = 0;
    double p0 = 0;
    double i_hat_star = 0;
    double sigma_D = 0;
    double fgum_score = 0;
    double turbo_prange_score = 0;
    double prange_score = 0;
};

double alpha_perp(double alpha);                 // 1/2 - sqrt(alpha(1-alpha))
double bp_score_from_threshold(double eps_star); // 1/2 + sqrt(eps(1-eps))

IDSet build_ID(int D);

Rational i_hat_star_exact(int D);
Rational sigma_D_exact(int D);
double i_hat_star(int D);
double sigma_D(int D);

double e_max(int k, int D);                     // largest root, |tol| 1e-12
double alpha_min(int k, int D);                 // (1-e_max)(1-2^{1-D})
double p0(double alpha, int D);                 // alpha * 2^{D-1}/(2^{D-1}-1)
double fgum_score(int k, int D);
double turbo_prange_score(int k, int D);
double prange_score(int k, int D);
double x_k(int k);                              // positive root of x=(k-1)(1-e^{-x})

TheoryReport theory_report(int k, int D);

// Depth-14 QAOA constants nu_14^[k] * sqrt(k/2) (tabulated, not computed).
double qaoa_nu14_scaled(int k);

struct AsymptoticComparison {
    double qaoa_estimate;
    double fgum_estimate;
};
// (1/2 + nu*sqrt(k/(2(D-1))), 1/2 + 1/sqrt(2 pi D)); p is carried for
// labeling only, nu must come from the caller.
AsymptoticComparison asymptotic_comparison(int k, int D, int p, double nu);

// E(nu): expected number of parity checks touching nu erased bits.
double expected_equations(double nu, int k, int D, double m);

}  // namespace xorsat
