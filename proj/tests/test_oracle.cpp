#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ptdeph/oracle.hpp"

using namespace ptdeph;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Qubit plus one mode in the full 2N space: H = sz (omega0/2) + 1 x H_B + sz x V,
// starting from |+><+| x rho_B. Returns |rho_01(t)| / |rho_01(0)| after a
// partial trace, using a Pade matrix exponential.
double full_space_ratio(const OracleMode& m, double temperature, double t) {
    const int n = m.mode.fock_dim;
    const Eigen::MatrixXcd a = annihilation(n).cast<cd>();
    const Eigen::MatrixXcd hb = bath_hamiltonian_h(m.mode);
    const cd g = m.coupling.value();
    const Eigen::MatrixXcd v = g * a.adjoint() + std::conj(g) * a;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    h.topLeftCorner(n, n) = hb + v + 0.5 * Eigen::MatrixXcd::Identity(n, n);
    h.bottomRightCorner(n, n) = hb - v - 0.5 * Eigen::MatrixXcd::Identity(n, n);
    const auto th = thermal_state(m.mode, temperature);
    Eigen::MatrixXcd rho_b = th.populations.cast<cd>().asDiagonal();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) rho.block(i * n, j * n, n, n) = 0.5 * rho_b;
    }
    const Eigen::MatrixXcd u = (cd(0, -t) * h).exp();
    const Eigen::MatrixXcd out = u * rho * u.adjoint();
    return std::abs(out.block(0, n, n, n).trace()) / 0.5;
}

}  // namespace

TEST_CASE("annihilation operator") {
    const auto a = annihilation(4);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 2) == Approx(std::sqrt(2.0)));
    CHECK(a(2, 3) == Approx(std::sqrt(3.0)));
    CHECK(a.diagonal().norm() == 0.0);
    const Eigen::MatrixXd comm = a * a.transpose() - a.transpose() * a;
    for (int i = 0; i < 3; ++i) CHECK(comm(i, i) == Approx(1.0));
}

TEST_CASE("hermitian bath reduces to the number operator at tau = 0") {
    const TruncatedMode m{1.5, 0.0, 6};
    const auto h = bath_hamiltonian_h(m);
    for (int i = 0; i < 6; ++i) CHECK(h(i, i).real() == Approx(1.5 * (i + 0.5)));
    CHECK((h - h.adjoint()).norm() == 0.0);
    CHECK((metric(m) - Eigen::MatrixXcd::Identity(6, 6)).norm() == 0.0);
    CHECK(similarity_residual({1.5, 0.0, 24}, 6) == 0.0);
}

TEST_CASE("non-hermitian spectrum is real and shifted") {
    const TruncatedMode m{1.0, 0.3, 80};
    const auto ev = lowest_eigenvalues_nh(m, 5);
    const double Omega = std::sqrt(1.36);
    for (int n = 0; n < 5; ++n) {
        CHECK(ev[n].real() == Approx(Omega * (n + 0.5) + 0.3).epsilon(1e-10));
        CHECK(std::abs(ev[n].imag()) <= 1e-8);
    }
    const auto res = spectrum_residuals(m, 5);
    for (double r : res) CHECK(r <= 1e-9);
    // Negative tau has the same spectrum up to the sign of the shift.
    const auto neg = lowest_eigenvalues_nh({1.0, -0.3, 80}, 3);
    CHECK(neg[0].real() == Approx(Omega * 0.5 - 0.3).epsilon(1e-10));
}

TEST_CASE("metric maps the non-hermitian bath to its hermitian partner") {
    const TruncatedMode m{1.0, 0.2, 80};
    const auto eta = metric(m);
    CHECK((eta - eta.adjoint()).norm() <= 1e-12 * eta.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eta);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    const double r = similarity_residual(m, 20);
    CHECK(r <= 1e-20);
    CHECK_THROWS_AS(similarity_residual(m, 21), std::invalid_argument);
}

TEST_CASE("thermal populations") {
    const auto th = thermal_state({1.0, 0.0, 30}, 1.0);
    CHECK(th.populations.sum() == Approx(1.0).epsilon(1e-14));
    CHECK(th.populations(1) / th.populations(0) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(th.tail_weight == Approx(std::exp(-30.0)));
    const auto cold = thermal_state({1.0, 0.0, 5}, 0.0);
    CHECK(cold.populations(0) == 1.0);
    CHECK(cold.tail_weight == 0.0);
}

TEST_CASE("block-diagonal evolution agrees with full-space evolution") {
    for (double tau : {0.0, 0.3}) {
        for (double theta : {0.0, 1.1}) {
            const OracleMode m{{1.0, tau, 20}, Coupling(0.15, theta)};
            const auto ratios = coherence_ratios({m}, 0.7, {0.0, 1.3, 4.0, 9.5});
            CHECK(ratios[0] == Approx(1.0).epsilon(1e-13));
            for (std::size_t k = 1; k < 4; ++k) {
                const double t = std::vector<double>{0.0, 1.3, 4.0, 9.5}[k];
                CHECK(ratios[k] == Approx(full_space_ratio(m, 0.7, t)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("exact dephasing matches the closed form") {
    const QubitSystem sys{1.0};
    for (double tau : {0.0, 0.2, 0.4}) {
        for (double theta : {0.0, kPi / 4, kPi / 2}) {
            const std::vector<OracleMode> modes{{{1.0, tau, 24}, Coupling(0.1, theta)}};
            std::vector<double> times;
            for (int i = 0; i <= 20; ++i) times.push_back(i);
            const auto ex = exact_dephasing(sys, modes, 1.0, times);
            CHECK(ex.converged);
            DiscreteBath bath{{BathMode{1.0, Coupling(0.1, theta)}}, 1.0, tau};
            for (std::size_t k = 0; k < times.size(); ++k) {
                CHECK(std::abs(ex.ratios[k] - coherence_factor(bath, times[k])) <= 1e-9);
            }
        }
    }
}

TEST_CASE("two modes multiply") {
    const std::vector<OracleMode> modes{{{1.0, 0.2, 12}, Coupling(0.1, 0.4)}, {{1.7, 0.2, 12}, Coupling(0.08, 2.0)}};
    const auto ex = exact_dephasing(QubitSystem{}, modes, 0.5, {0.0, 2.0, 6.0});
    CHECK(ex.converged);
    DiscreteBath bath{{BathMode{1.0, Coupling(0.1, 0.4)}, BathMode{1.7, Coupling(0.08, 2.0)}}, 0.5, 0.2};
    for (double t : {2.0, 6.0}) {
        CHECK(ex.ratios[t == 2.0 ? 1 : 2] == Approx(coherence_factor(bath, t)).epsilon(1e-9));
    }
}

TEST_CASE("budget is enforced") {
    const std::vector<OracleMode> modes{{{1.0, 0.2, 40}, Coupling(0.1, 0.0)}};
    CHECK_THROWS_AS(exact_dephasing(QubitSystem{}, modes, 1.0, {1.0}, DephasingBudget{64, 1e-8}), std::invalid_argument);
    const auto ex = exact_dephasing(QubitSystem{}, modes, 1.0, {1.0}, DephasingBudget{100, 1e-30});
    CHECK_FALSE(ex.converged);
}

TEST_CASE("oracle report") {
    const auto report = run_oracle(OracleSettings{});
    CHECK(report.converged);
    CHECK(report.dephasing_max_error <= 1e-6);
    CHECK(report.spectrum_residuals.size() == 5);
    CHECK(report.similarity_residual <= 1e-8);
    CHECK(report.passed());

    OracleSettings zero;
    zero.modes = {BathMode{1.0, Coupling(0.0, 0.0)}};
    const auto z = run_oracle(zero);
    CHECK(z.dephasing_max_error <= 1e-12);

    OracleSettings herm;
    herm.tau = 0.0;
    CHECK(run_oracle(herm).similarity_residual == 0.0);
}
