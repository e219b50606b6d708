#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xorsatlab/qaoa.hpp"
#include "xorsatlab/rng.hpp"

using namespace xorsat;
using doctest::Approx;

namespace {

QaoaParams random_params(int p, Rng& rng) {
    QaoaParams prm;
    for (int i = 0; i < p; ++i) {
        prm.gammas.push_back((rng.uniform() - 0.5) * 2 * M_PI);
        prm.betas.push_back((rng.uniform() - 0.5) * M_PI);
    }
    return prm;
}

}  // namespace

TEST_CASE("zero angles give one half") {
    QaoaParams zero;
    zero.gammas = {0.0};
    zero.betas = {0.0};
    CHECK(tree_energy(3, 4, zero) == Approx(0.5).epsilon(1e-12));
    CHECK(lightcone_statevector_energy(3, 4, zero) == Approx(0.5).epsilon(1e-12));

    QaoaParams zero2;
    zero2.gammas = {0.0, 0.0};
    zero2.betas = {0.0, 0.0};
    CHECK(tree_energy(3, 5, zero2) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("light cone sizes") {
    CHECK(lightcone_qubits(3, 4, 1) == 21);  // k + k(D-1)(k-1)
    CHECK(lightcone_qubits(3, 5, 1) == 27);
    CHECK(lightcone_qubits(2, 3, 1) == 6);
}

TEST_CASE("tree energy matches the statevector oracle at p=1, (3,4)") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        QaoaParams prm = random_params(1, rng);
        double tree = tree_energy(3, 4, prm);
        double oracle = lightcone_statevector_energy(3, 4, prm);
        CHECK(tree == Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("oracle agreement on other small degree pairs at p=1") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        QaoaParams prm = random_params(1, rng);
        CHECK(tree_energy(2, 3, prm) ==
              Approx(lightcone_statevector_energy(2, 3, prm)).epsilon(1e-9));
        CHECK(tree_energy(3, 3, prm) ==
              Approx(lightcone_statevector_energy(3, 3, prm)).epsilon(1e-9));
        CHECK(tree_energy(2, 6, prm) ==
              Approx(lightcone_statevector_energy(2, 6, prm)).epsilon(1e-9));
    }
}

TEST_CASE("oracle agreement at p=2 on the smallest tree") {
    Rng rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        QaoaParams prm = random_params(2, rng);
        double tree = tree_energy(2, 3, prm);  // p=2 light cone: 14 qubits
        double oracle = lightcone_statevector_energy(2, 3, prm);
        CHECK(tree == Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("dense p=2 path with a zero second layer matches the direct p=1 path") {
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        QaoaParams p1 = random_params(1, rng);
        QaoaParams padded;
        padded.gammas = {p1.gammas[0], 0.0};
        padded.betas = {p1.betas[0], 0.0};
        // (2,3) is the only pair whose p=2 cone fits in the dense simulator.
        CHECK(lightcone_statevector_energy(2, 3, p1) ==
              Approx(lightcone_statevector_energy(2, 3, padded)).epsilon(1e-12));
    }
}

TEST_CASE("gamma periodicity and beta symmetry") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        QaoaParams prm = random_params(2, rng);
        QaoaParams shifted = prm;
        shifted.gammas[0] += 2 * M_PI;
        CHECK(tree_energy(3, 6, prm) == Approx(tree_energy(3, 6, shifted)).epsilon(1e-10));
        QaoaParams beta_shift = prm;
        beta_shift.betas[1] += M_PI;
        CHECK(tree_energy(3, 6, prm) == Approx(tree_energy(3, 6, beta_shift)).epsilon(1e-10));
    }
}

TEST_CASE("known p=1 optimum for 3-regular maxcut-like pair") {
    TreeEvalResult r = optimize(2, 3, 1, 10, 1);
    CHECK(r.satisfied_fraction == Approx(0.6924).epsilon(2e-3));
}

TEST_CASE("p=1 optimize matches a dense grid search") {
    const int k = 3, D = 6;
    double grid_best = 0;
    for (int gi = 0; gi < 120; ++gi)
        for (int bi = 0; bi < 120; ++bi) {
            QaoaParams prm;
            prm.gammas = {-M_PI / 2 + gi * M_PI / 120.0};
            prm.betas = {-M_PI / 4 + bi * M_PI / 2 / 120.0};
            grid_best = std::max(grid_best, tree_energy(k, D, prm));
        }
    TreeEvalResult r = optimize(k, D, 1, 10, 3);
    CHECK(r.satisfied_fraction >= grid_best - 1e-6);
}

TEST_CASE("optimized value is nondecreasing in depth") {
    double prev = 0;
    for (int p = 1; p <= 4; ++p) {
        TreeEvalResult r = optimize(3, 6, p, 6, 11);
        CHECK(r.satisfied_fraction >= prev - 1e-9);
        CHECK(r.satisfied_fraction <= 1.0);
        prev = r.satisfied_fraction;
    }
    CHECK(prev > 0.70);  // p=4 should already be well above the p=1 value
}

TEST_CASE("more restarts never hurt") {
    TreeEvalResult few = optimize(3, 5, 2, 2, 9);
    TreeEvalResult many = optimize(3, 5, 2, 8, 9);
    CHECK(many.satisfied_fraction >= few.satisfied_fraction - 1e-9);
}

TEST_CASE("parameter validation") {
    QaoaParams bad;
    bad.gammas = {0.1, 0.2};
    bad.betas = {0.1};
    CHECK_THROWS_AS((void)tree_energy(3, 4, bad), std::invalid_argument);

    QaoaParams big;
    for (int i = 0; i < 12; ++i) {
        big.gammas.push_back(0.1);
        big.betas.push_back(0.1);
    }
    CHECK_THROWS_AS((void)tree_energy(3, 4, big), std::invalid_argument);
    QaoaParams one;
    one.gammas = {0.3};
    one.betas = {0.2};
    CHECK_THROWS_AS((void)lightcone_statevector_energy(5, 8, one), std::invalid_argument);
}
