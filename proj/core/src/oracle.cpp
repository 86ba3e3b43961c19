#include "ptdeph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "mpfr_eigen.hpp"

namespace ptdeph {

namespace {

constexpr double kTailWarning = 1e-10;

// Exact truncation of (a - a^dag)^2 = a^2 + a^dag^2 - 2n - 1.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> quadrature_square(int dim) {
    using std::sqrt;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        x(n, n) = Scalar(-(2 * n + 1));
        if (n + 2 < dim) {
            const Scalar v = sqrt(Scalar((n + 1) * (n + 2)));
            x(n, n + 2) = v;
            x(n + 2, n) = v;
        }
    }
    return x;
}

// H^nh = w (n + 1/2) + tau w (a^2 - a^dag^2 + 1); <n|a^2|n+2> = sqrt((n+1)(n+2)).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> hamiltonian_nh(int dim, const Scalar& w, const Scalar& tau) {
    using std::sqrt;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        h(n, n) = w * (Scalar(n) + Scalar(0.5)) + tau * w;
        if (n + 2 < dim) {
            const Scalar v = tau * w * sqrt(Scalar((n + 1) * (n + 2)));
            h(n, n + 2) = v;
            h(n + 2, n) = -v;
        }
    }
    return h;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> hamiltonian_h(int dim, const Scalar& w, const Scalar& tau) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h = -tau * tau * quadrature_square<Scalar>(dim);
    for (int n = 0; n < dim; ++n) h(n, n) += Scalar(n) + Scalar(0.5) + tau;
    return w * h;
}

Eigen::MatrixXd real_hamiltonian_nh(const TruncatedMode& mode) {
    return hamiltonian_nh<double>(mode.fock_dim, mode.omega, mode.tau);
}

Eigen::MatrixXd real_hamiltonian_h(const TruncatedMode& mode) {
    return hamiltonian_h<double>(mode.fock_dim, mode.omega, mode.tau);
}

// MPFR's default precision is process-wide in this Boost version.
std::mutex& precision_mutex() {
    static std::mutex m;
    return m;
}

std::size_t total_dim(const std::vector<OracleMode>& modes) {
    std::size_t d = 1;
    for (const auto& m : modes) d *= static_cast<std::size_t>(m.mode.fock_dim);
    return d;
}

std::vector<double> default_times() {
    std::vector<double> t(101);
    for (int i = 0; i <= 100; ++i) t[i] = 20.0 * i / 100.0;
    return t;
}

}  // namespace

void TruncatedMode::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("mode omega must be > 0");
    if (!std::isfinite(tau)) throw std::invalid_argument("mode tau must be finite");
    if (fock_dim < 2) throw std::invalid_argument("fock_dim must be >= 2");
}

Eigen::MatrixXd annihilation(int dim) {
    if (dim < 1) throw std::invalid_argument("Fock dimension must be >= 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd bath_hamiltonian_nh(const TruncatedMode& mode) {
    mode.validate();
    return real_hamiltonian_nh(mode).cast<std::complex<double>>();
}

Eigen::MatrixXcd bath_hamiltonian_h(const TruncatedMode& mode) {
    mode.validate();
    return real_hamiltonian_h(mode).cast<std::complex<double>>();
}

Eigen::MatrixXcd metric(const TruncatedMode& mode) {
    mode.validate();
    const int n = mode.fock_dim;
    if (mode.tau == 0.0) return Eigen::MatrixXcd::Identity(n, n);
    // -(a - a^dag)^2 is positive semidefinite, so eta = V e^{tau L / 2} V^T.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-quadrature_square<double>(n));
    const Eigen::VectorXd scale = (0.5 * mode.tau * es.eigenvalues()).array().exp();
    const Eigen::MatrixXd eta = es.eigenvectors() * scale.asDiagonal() * es.eigenvectors().transpose();
    return eta.cast<std::complex<double>>();
}

double similarity_residual(const TruncatedMode& mode, int interior_dim) {
    mode.validate();
    const int n = mode.fock_dim;
    if (interior_dim < 1 || 4 * interior_dim > n) {
        throw std::invalid_argument("interior block must satisfy 1 <= interior_dim <= fock_dim / 4");
    }
    if (mode.tau == 0.0) return 0.0;

    using detail::BigFloat;
    using BigMatrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
    // Gershgorin: the spectrum of -(a - a^dag)^2 lies in [0, 4N + 2].
    const double range = std::abs(mode.tau) * (4.0 * n + 2.0) / 2.0;
    const auto digits = static_cast<unsigned>(40.0 + std::ceil(range / std::log(10.0)));

    std::lock_guard<std::mutex> lock(precision_mutex());
    detail::ScopedPrecision precision(digits);

    const BigFloat w(mode.omega);
    const BigFloat tau(mode.tau);
    const BigMatrix q2 = quadrature_square<BigFloat>(n);
    const BigMatrix h_nh = hamiltonian_nh<BigFloat>(n, w, tau);
    const BigMatrix h_h = hamiltonian_h<BigFloat>(n, w, tau);

    Eigen::SelfAdjointEigenSolver<BigMatrix> es(-q2);
    const BigMatrix& v = es.eigenvectors();
    BigMatrix up = v;
    BigMatrix down = v;
    for (int j = 0; j < n; ++j) {
        const BigFloat f = exp(tau / 2 * es.eigenvalues()(j));
        up.col(j) *= f;
        down.col(j) /= f;
    }
    // Only the interior rows of eta and interior columns of eta^-1 are needed.
    const BigMatrix eta_rows = up.topRows(interior_dim) * v.transpose();
    const BigMatrix inv_cols = down * v.topRows(interior_dim).transpose();
    const BigMatrix diff = eta_rows * h_nh * inv_cols - h_h.topLeftCorner(interior_dim, interior_dim);

    BigFloat worst(0);
    for (int i = 0; i < interior_dim; ++i) {
        for (int j = 0; j < interior_dim; ++j) worst = std::max(worst, BigFloat(abs(diff(i, j))));
    }
    return static_cast<double>(worst);
}

std::vector<std::complex<double>> lowest_eigenvalues_nh(const TruncatedMode& mode, int count) {
    mode.validate();
    if (count < 1 || count > mode.fock_dim) throw std::invalid_argument("eigenvalue count out of range");
    Eigen::EigenSolver<Eigen::MatrixXd> es(real_hamiltonian_nh(mode), false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration failed for H^nh");
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + mode.fock_dim);
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    ev.resize(static_cast<std::size_t>(count));
    return ev;
}

std::vector<double> spectrum_residuals(const TruncatedMode& mode, int count) {
    const auto ev = lowest_eigenvalues_nh(mode, count);
    const double Omega = big_omega(mode.omega, mode.tau);
    std::vector<double> out;
    out.reserve(ev.size());
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const double target = Omega * (static_cast<double>(k) + 0.5) + mode.omega * mode.tau;
        out.push_back(std::abs(ev[k] - target));
    }
    return out;
}

ThermalState thermal_state(const TruncatedMode& mode, double temperature) {
    mode.validate();
    if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
    ThermalState out;
    out.populations = Eigen::VectorXd::Zero(mode.fock_dim);
    if (temperature == 0.0) {
        out.populations(0) = 1.0;
        return out;
    }
    const double x = mode.omega / temperature;
    for (int n = 0; n < mode.fock_dim; ++n) out.populations(n) = std::exp(-x * n);
    out.populations /= out.populations.sum();
    out.tail_weight = std::exp(-x * mode.fock_dim);
    return out;
}

std::vector<double> coherence_ratios(const std::vector<OracleMode>& modes, double temperature,
                                     const std::vector<double>& times) {
    if (modes.empty()) throw std::invalid_argument("oracle needs at least one mode");
    for (const auto& m : modes) m.mode.validate();
    using Matrix = Eigen::MatrixXcd;
    const auto dim = static_cast<Eigen::Index>(total_dim(modes));

    Matrix h_bath = Matrix::Zero(dim, dim);
    Matrix coupling = Matrix::Zero(dim, dim);
    Eigen::VectorXd rho = Eigen::VectorXd::Ones(dim);
    Eigen::Index left = 1;
    for (const auto& m : modes) {
        const Eigen::Index n = m.mode.fock_dim;
        const Eigen::Index right = dim / (left * n);
        const Matrix id_l = Matrix::Identity(left, left);
        const Matrix id_r = Matrix::Identity(right, right);
        const Matrix a = annihilation(m.mode.fock_dim).cast<std::complex<double>>();
        const std::complex<double> g = m.coupling.value();
        const Matrix v = g * a.adjoint() + std::conj(g) * a;

        h_bath += Eigen::kroneckerProduct(id_l, Eigen::kroneckerProduct(bath_hamiltonian_h(m.mode), id_r)).eval();
        coupling += Eigen::kroneckerProduct(id_l, Eigen::kroneckerProduct(v, id_r)).eval();
        const Eigen::VectorXd p = thermal_state(m.mode, temperature).populations;
        rho = rho.cwiseProduct(Eigen::kroneckerProduct(Eigen::VectorXd::Ones(left),
                                                       Eigen::kroneckerProduct(p, Eigen::VectorXd::Ones(right)))
                                   .eval());
        left *= n;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> plus(h_bath + coupling);
    Eigen::SelfAdjointEigenSolver<Matrix> minus(h_bath - coupling);
    if (plus.info() != Eigen::Success || minus.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolver failed in the exact oracle");
    }
    const Matrix& vp = plus.eigenvectors();
    const Matrix& vm = minus.eigenvectors();
    // Tr[U_- rho U_+^dag] = sum_ij e^{-i E-_i t} e^{+i E+_j t} A_ij B_ji
    // with A = V_-^dag rho V_+ and B = V_+^dag V_-.
    const Matrix a_mat = vm.adjoint() * rho.asDiagonal() * vp;
    const Matrix b_mat = vp.adjoint() * vm;
    const Matrix weights = a_mat.cwiseProduct(b_mat.transpose());

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        const Eigen::VectorXcd u = (std::complex<double>(0.0, -t) * minus.eigenvalues().cast<std::complex<double>>())
                                       .array()
                                       .exp();
        const Eigen::VectorXcd w = (std::complex<double>(0.0, t) * plus.eigenvalues().cast<std::complex<double>>())
                                       .array()
                                       .exp();
        out.push_back(std::abs((u.transpose() * (weights * w)).value()));
    }
    return out;
}

ExactDephasing exact_dephasing(const QubitSystem& system, const std::vector<OracleMode>& modes, double temperature,
                               const std::vector<double>& times, const DephasingBudget& budget) {
    system.validate();
    if (modes.empty()) throw std::invalid_argument("oracle needs at least one mode");
    if (2 * total_dim(modes) > budget.max_total_dim) {
        throw std::invalid_argument("oracle dimension 2 * " + std::to_string(total_dim(modes)) + " exceeds budget " +
                                    std::to_string(budget.max_total_dim));
    }
    for (double t : times) {
        if (!(t >= 0.0)) throw std::invalid_argument("oracle times must be >= 0");
    }

    std::vector<OracleMode> current = modes;
    ExactDephasing out;
    out.ratios = coherence_ratios(current, temperature, times);
    out.fock_dim_used = current.front().mode.fock_dim;
    while (true) {
        std::vector<OracleMode> doubled = current;
        for (auto& m : doubled) m.mode.fock_dim *= 2;
        if (2 * total_dim(doubled) > budget.max_total_dim) break;

        auto finer = coherence_ratios(doubled, temperature, times);
        double change = 0.0;
        for (std::size_t i = 0; i < finer.size(); ++i) change = std::max(change, std::abs(finer[i] - out.ratios[i]));
        out.ratios = std::move(finer);
        out.last_change = change;
        out.fock_dim_used = doubled.front().mode.fock_dim;
        current = std::move(doubled);
        if (change <= budget.convergence_tol) {
            out.converged = true;
            break;
        }
    }
    for (const auto& m : current) {
        out.tail_weight = std::max(out.tail_weight, thermal_state(m.mode, temperature).tail_weight);
    }
    return out;
}

OracleReport run_oracle(const OracleSettings& settings) {
    if (settings.modes.empty()) throw std::invalid_argument("oracle needs at least one mode");
    const std::vector<double> times = settings.times.empty() ? default_times() : settings.times;

    OracleReport report;
    for (const auto& bm : settings.modes) {
        const TruncatedMode spectral{bm.omega, settings.tau, settings.spectrum_fock_dim};
        const auto res = spectrum_residuals(spectral, settings.spectrum_levels);
        report.spectrum_residuals.insert(report.spectrum_residuals.end(), res.begin(), res.end());
        report.similarity_residual =
            std::max(report.similarity_residual, similarity_residual(spectral, settings.interior_dim));
    }

    std::vector<OracleMode> modes;
    for (const auto& bm : settings.modes) {
        modes.push_back(OracleMode{TruncatedMode{bm.omega, settings.tau, settings.fock_dim}, bm.coupling});
    }
    const auto exact = exact_dephasing(QubitSystem{}, modes, settings.temperature, times, settings.budget);

    const DiscreteBath bath{settings.modes, settings.temperature, settings.tau};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double closed = coherence_factor(bath, times[i]);
        report.dephasing_max_error = std::max(report.dephasing_max_error, std::abs(exact.ratios[i] - closed));
    }
    report.fock_dim_used = exact.fock_dim_used;
    report.converged = exact.converged;
    if (!exact.converged) {
        report.warnings.push_back("Fock truncation did not converge within the dimension budget (last change " +
                                  std::to_string(exact.last_change) + ")");
    }
    if (exact.tail_weight > kTailWarning) {
        report.warnings.push_back("thermal tail weight beyond the truncation is " + std::to_string(exact.tail_weight));
    }
    return report;
}

}  // namespace ptdeph
