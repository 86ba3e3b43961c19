#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "ptdeph/entanglement.hpp"

using namespace ptdeph;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) z(i, j) = cd(n(rng), n(rng));
    }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    return qr.householderQ();
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
    return k;
}

Eigen::Matrix4cd werner(double p) {
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    return p * bell + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0;
}

}  // namespace

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(dephased_bell(0.0)).concurrence == Approx(1.0).epsilon(1e-14));
    Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
    product(0, 0) = 1.0;
    CHECK(concurrence(TwoQubitState(product)).concurrence == Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(concurrence(TwoQubitState(Eigen::Matrix4cd::Identity() / 4.0)).concurrence == 0.0);
}

TEST_CASE("werner states follow max(0, (3p - 1)/2)") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        CHECK(concurrence(TwoQubitState(werner(p))).concurrence ==
              Approx(std::max(0.0, (3 * p - 1) / 2)).scale(1.0).epsilon(1e-13));
    }
}

TEST_CASE("generic mixed state against a 40-digit reference") {
    const cd v[16] = {{0.31411959649250426, 0},
                      {-0.020698497723814397, 0.03361510313388114},
                      {-0.2089073133082508, -0.0032969789402974535},
                      {-0.005890094128949318, 0.059462964303276036},
                      {-0.020698497723814397, -0.03361510313388114},
                      {0.18503395101532039, 0},
                      {0.03340776276482874, 0.2347524303884197},
                      {0.09345157587987536, -0.08003452291403178},
                      {-0.2089073133082508, 0.0032969789402974535},
                      {0.03340776276482874, -0.2347524303884197},
                      {0.40675605648295887, 0},
                      {-0.07896684678819496, -0.1436790455226854},
                      {-0.005890094128949318, -0.059462964303276036},
                      {0.09345157587987536, 0.08003452291403178},
                      {-0.07896684678819496, 0.1436790455226854},
                      {0.09409039600921648, 0}};
    Eigen::Matrix4cd rho;
    for (int i = 0; i < 16; ++i) rho(i / 4, i % 4) = v[i];
    CHECK(concurrence(TwoQubitState(rho)).concurrence == Approx(0.47821105059837553).epsilon(1e-12));
}

TEST_CASE("dephased Bell state has concurrence exp(-gamma)") {
    for (double g : {0.0, 0.5, 2.0, 10.0, 40.0}) {
        const auto r = concurrence(dephased_bell(g));
        CHECK(std::abs(r.concurrence - std::exp(-g)) <= 1e-12);
        CHECK(r.lambdas[0] >= r.lambdas[1]);
        CHECK(r.lambdas[1] >= r.lambdas[2]);
        CHECK(r.lambdas[2] >= r.lambdas[3]);
    }
    CHECK_THROWS_AS(dephased_bell(-1.0), std::invalid_argument);
}

TEST_CASE("local unitaries leave concurrence unchanged") {
    std::mt19937_64 rng(2024);
    for (double g : {0.0, 0.7, 3.0}) {
        const auto rho = dephased_bell(g).matrix();
        const double c0 = concurrence(dephased_bell(g)).concurrence;
        for (int i = 0; i < 30; ++i) {
            const Eigen::Matrix4cd u = kron(random_unitary(rng), random_unitary(rng));
            const Eigen::Matrix4cd rotated = u * rho * u.adjoint();
            CHECK(std::abs(concurrence(TwoQubitState(rotated)).concurrence - c0) <= 1e-10);
        }
    }
}

TEST_CASE("entanglement of formation") {
    CHECK(eof_from_concurrence(0.0) == 0.0);
    CHECK(eof_from_concurrence(1.0) == 1.0);
    CHECK(eof_from_concurrence(0.5) == Approx(0.35457890266526988).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double e = eof_from_concurrence(i / 100.0);
        CHECK(e > prev);
        prev = e;
    }
    CHECK_THROWS_AS(eof_from_concurrence(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(eof_from_concurrence(1.1), std::invalid_argument);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == 1.0);
}

TEST_CASE("two-qubit state validation") {
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity() / 2.0;
    CHECK_THROWS_AS(TwoQubitState{bad}, std::invalid_argument);
    Eigen::Matrix4cd nonherm = Eigen::Matrix4cd::Identity() / 4.0;
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(TwoQubitState{nonherm}, std::invalid_argument);
    Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(TwoQubitState{neg}, std::invalid_argument);
}
