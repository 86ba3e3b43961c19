#include "ptdeph/dephasing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ptdeph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStateTol = 1e-12;

void require_positive_frequency(double omega, const char* what) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument(std::string(what) + " must be a positive finite frequency");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time must be finite and >= 0");
    }
}

}  // namespace

Coupling::Coupling(double magnitude, double phase) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
        throw std::invalid_argument("coupling magnitude must be finite and >= 0");
    }
    if (!std::isfinite(phase)) {
        throw std::invalid_argument("coupling phase must be finite");
    }
    double p = std::fmod(phase, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    if (p >= kTwoPi) p = 0.0;
    magnitude_ = magnitude;
    phase_ = p;
}

Coupling Coupling::from_complex(std::complex<double> g) {
    return Coupling(std::abs(g), std::arg(g));
}

double Coupling::real_part() const { return magnitude_ * std::cos(phase_); }
double Coupling::imag_part() const { return magnitude_ * std::sin(phase_); }

void DiscreteBath::validate() const {
    if (modes.empty()) throw std::invalid_argument("discrete bath needs at least one mode");
    for (const auto& m : modes) require_positive_frequency(m.omega, "mode omega");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("temperature must be finite and >= 0");
    }
    if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
}

void QubitSystem::validate() const { require_positive_frequency(omega0, "omega0"); }

QubitState::QubitState(const Eigen::Matrix2cd& rho) : rho_(rho) {
    if (!rho.allFinite()) throw std::invalid_argument("qubit state has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
        throw std::invalid_argument("qubit state is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > kStateTol) {
        throw std::invalid_argument("qubit state trace differs from 1");
    }
    const Eigen::Matrix2cd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStateTol) {
        throw std::invalid_argument("qubit state is not positive semidefinite");
    }
}

double big_omega(double omega, double tau) {
    require_positive_frequency(omega, "omega");
    return omega * std::sqrt(1.0 + 4.0 * tau * tau);
}

double thermal_coth(double omega, double temperature) {
    if (temperature == 0.0) return 1.0;
    const double x = omega / (2.0 * temperature);
    if (x < 1e-4) return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    return 1.0 / std::tanh(x);
}

std::complex<double> xi_hermitian(const Coupling& g, double omega, double t) {
    require_positive_frequency(omega, "omega");
    require_time(t);
    // 1 - e^{i w t} = 2 sin^2(w t / 2) - i sin(w t), free of cancellation near t = 0.
    const double s = std::sin(0.5 * omega * t);
    const std::complex<double> bracket(2.0 * s * s, -std::sin(omega * t));
    return g.value() / omega * bracket;
}

std::complex<double> xi_nonhermitian(const Coupling& g, double omega, double tau, double t) {
    require_time(t);
    const double Omega = big_omega(omega, tau);
    const double s_half = std::sin(0.5 * Omega * t);
    const std::complex<double> gv = g.value();
    const double envelope = 8.0 * omega * s_half * s_half / (Omega * Omega);
    const std::complex<double> in_phase = gv / 4.0 + tau * tau * g.real_part();
    const std::complex<double> quadrature = std::complex<double>(0.0, 1.0) * gv * std::sin(Omega * t) / Omega;
    return envelope * in_phase - quadrature;
}

double gamma_discrete(const DiscreteBath& bath, double t) {
    bath.validate();
    require_time(t);
    const double tau2 = bath.tau * bath.tau;
    double total = 0.0;
    for (const auto& mode : bath.modes) {
        const double w = mode.omega;
        const double Omega = big_omega(w, bath.tau);
        const double re = mode.coupling.real_part();
        const double im = mode.coupling.imag_part();
        const double g2 = mode.coupling.magnitude() * mode.coupling.magnitude();
        const double s = std::sin(Omega * t);
        const double sh = std::sin(0.5 * Omega * t);
        const double sh2 = sh * sh;
        const double O2 = Omega * Omega;

        const double cross = 32.0 * tau2 * w * re * im * s * sh2 / (O2 * Omega);
        const double quartic = 8.0 * w * w * sh2 * sh2 * (g2 + 8.0 * tau2 * re * re * (1.0 + 2.0 * tau2)) / (O2 * O2);
        const double square = 2.0 * g2 * s * s / O2;
        total += (cross + quartic + square) * thermal_coth(w, bath.temperature);
    }
    // Nonnegative in exact arithmetic (it is 2 sum |xi_k|^2 coth); clip roundoff.
    return total > 0.0 ? total : 0.0;
}

double coherence_factor(const DiscreteBath& bath, double t) {
    return std::exp(-gamma_discrete(bath, t));
}

QubitState evolve_qubit(const QubitState& initial, double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    Eigen::Matrix2cd rho = initial.matrix();
    const double decay = std::exp(-gamma);
    rho(0, 1) *= decay;
    rho(1, 0) *= decay;
    return QubitState(rho);
}

}  // namespace ptdeph
