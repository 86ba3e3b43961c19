#include "ptdeph/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ptdeph {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;

Eigen::Matrix4cd spin_flip() {
    // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
    Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

}  // namespace

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& rho) : rho_(rho) {
    if (!rho.allFinite()) throw std::invalid_argument("two-qubit state has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw std::invalid_argument("two-qubit state is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > kHermTol) {
        throw std::invalid_argument("two-qubit state trace differs from 1");
    }
    const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("two-qubit state is not positive semidefinite");
    }
}

ConcurrenceResult concurrence(const TwoQubitState& state) {
    // The square roots of eig(R) are the singular values of
    // sqrt(rho) Y sqrt(rho)*, since sqrt(rho) R sqrt(rho)^-1 = M M^dagger.
    // The SVD keeps the zero branches at ~eps instead of ~sqrt(eps).
    const Eigen::Matrix4cd herm = 0.5 * (state.matrix() + state.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
    const Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::Matrix4cd m = sqrt_rho * spin_flip() * sqrt_rho.conjugate();

    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
    ConcurrenceResult out;
    for (int i = 0; i < 4; ++i) out.lambdas[i] = std::max(0.0, svd.singularValues()(i));
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    const double c = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
    out.concurrence = std::clamp(c, 0.0, 1.0);
    return out;
}

TwoQubitState dephased_bell(double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    rho(0, 3) = 0.5 * std::exp(-gamma);
    rho(3, 0) = rho(0, 3);
    return TwoQubitState(rho);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary entropy needs x in [0, 1]");
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

double eof_from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("concurrence must lie in [0, 1]");
    const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    return binary_entropy(x);
}

}  // namespace ptdeph
