// oracle.hpp: exact truncated-Fock verification of the closed forms.
//
// Conventions: m = hbar = 1, so the spring constant is omega^2 and the
// metric parameter is tau / omega. In ladder form
//   H^nh = omega (a^dag a + 1/2) + tau omega (a^2 - a^dag^2 + 1)
//   H^h  = omega [a^dag a + 1/2 + tau - tau^2 (a - a^dag)^2]
//   eta  = exp[-(tau/2) (a - a^dag)^2]
// with (a - a^dag)^2 built as the exact truncation a^2 + a^dag^2 - 2n - 1.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ptdeph/dephasing.hpp"

namespace ptdeph {

struct TruncatedMode {
    double omega{1.0};
    double tau{0.0};
    int fock_dim{2};

    void validate() const;
};

/// Annihilation operator on the first `dim` Fock states: <n-1|a|n> = sqrt(n).
Eigen::MatrixXd annihilation(int dim);

Eigen::MatrixXcd bath_hamiltonian_nh(const TruncatedMode& mode);
Eigen::MatrixXcd bath_hamiltonian_h(const TruncatedMode& mode);

/// Positive-definite metric eta, the exact identity at tau = 0.
Eigen::MatrixXcd metric(const TruncatedMode& mode);

/// max |(eta H^nh eta^-1 - H^h)_{ij}| over the top-left interior block.
/// The product is formed in MPFR at a precision scaled to eta's dynamic
/// range (roughly e^{|tau| 2 N}), so the value reflects truncation and
/// not double-precision cancellation. Requires interior_dim <= fock_dim / 4.
double similarity_residual(const TruncatedMode& mode, int interior_dim);

/// Eigenvalues of the truncated H^nh sorted by real part, lowest `count`.
std::vector<std::complex<double>> lowest_eigenvalues_nh(const TruncatedMode& mode, int count);

/// |E_n - (Omega (n + 1/2) + omega tau)| for n < count.
std::vector<double> spectrum_residuals(const TruncatedMode& mode, int count);

struct ThermalState {
    Eigen::VectorXd populations;  // diagonal of rho, renormalized on the truncated space
    double tail_weight{0.0};      // weight the untruncated state puts on n >= fock_dim
};

/// Thermal state of the a-mode oscillator, (1 - e^{-w/T}) e^{-(w/T) a^dag a}.
ThermalState thermal_state(const TruncatedMode& mode, double temperature);

struct OracleMode {
    TruncatedMode mode;
    Coupling coupling;
};

struct DephasingBudget {
    std::size_t max_total_dim{3200};  // bound on 2 * prod(fock_dim)
    double convergence_tol{1e-8};
};

struct ExactDephasing {
    std::vector<double> ratios;  // |rho01(t)| / |rho01(0)|
    int fock_dim_used{0};
    bool converged{false};
    double last_change{0.0};  // max |ratio(2N) - ratio(N)| of the final doubling
    double tail_weight{0.0};
};

/// Exact coherence ratio at a fixed truncation: evolves the two bath
/// branches H_B +/- sum(g a^dag + g* a) by Hermitian eigendecomposition and
/// returns |Tr[e^{-i H_- t} rho_B e^{+i H_+ t}]| for each time.
std::vector<double> coherence_ratios(const std::vector<OracleMode>& modes, double temperature,
                                     const std::vector<double>& times);

/// Runs coherence_ratios at the given truncation and keeps doubling every
/// mode's fock_dim until two successive results agree to convergence_tol or
/// the budget is exhausted (converged = false). Throws std::invalid_argument
/// if the starting dimensions already exceed the budget.
ExactDephasing exact_dephasing(const QubitSystem& system, const std::vector<OracleMode>& modes, double temperature,
                               const std::vector<double>& times, const DephasingBudget& budget = {});

struct OracleSettings {
    std::vector<BathMode> modes{BathMode{1.0, Coupling(0.1, 1.5707963267948966)}};
    double tau{0.2};
    double temperature{1.0};
    std::vector<double> times;  // empty means 101 points on [0, 20]
    int fock_dim{24};
    DephasingBudget budget{};
    int spectrum_fock_dim{80};
    int spectrum_levels{5};
    int interior_dim{20};
};

struct OracleReport {
    std::vector<double> spectrum_residuals;
    double similarity_residual{0.0};
    double dephasing_max_error{0.0};
    int fock_dim_used{0};
    bool converged{false};
    std::vector<std::string> warnings;  // not part of the JSON document

    bool passed(double tolerance = 1e-6) const { return converged && dephasing_max_error <= tolerance; }
};

OracleReport run_oracle(const OracleSettings& settings);

}  // namespace ptdeph
