// dephasing.hpp: closed-form pure dephasing of a qubit coupled to a
// (possibly PT-symmetric non-Hermitian) bosonic bath.
//
// Units: hbar = 1 and k_B = 1, so temperatures share frequency units.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace ptdeph {

/// Complex system-bath coupling stored in polar form. The phase is kept
/// in [0, 2pi); Cartesian parts are derived.
class Coupling {
public:
    Coupling() = default;
    Coupling(double magnitude, double phase);

    static Coupling from_complex(std::complex<double> g);

    double magnitude() const { return magnitude_; }
    double phase() const { return phase_; }
    double real_part() const;
    double imag_part() const;
    std::complex<double> value() const { return std::polar(magnitude_, phase_); }

private:
    double magnitude_{0.0};
    double phase_{0.0};
};

struct BathMode {
    double omega{1.0};
    Coupling coupling{};
};

/// Discrete set of oscillator modes with the temperature of the thermal
/// bath state and the non-Hermiticity tau shared by every mode.
struct DiscreteBath {
    std::vector<BathMode> modes;
    double temperature{0.0};
    double tau{0.0};

    /// Throws std::invalid_argument when the bath is empty, a mode has
    /// omega <= 0 or the temperature is negative.
    void validate() const;
};

struct QubitSystem {
    double omega0{1.0};

    void validate() const;
};

/// 2x2 density matrix. Construction checks Hermiticity, unit trace and
/// positivity to 1e-12.
class QubitState {
public:
    explicit QubitState(const Eigen::Matrix2cd& rho);

    const Eigen::Matrix2cd& matrix() const { return rho_; }
    std::complex<double> coherence() const { return rho_(0, 1); }

private:
    Eigen::Matrix2cd rho_;
};

/// Omega = omega * sqrt(1 + 4 tau^2), the normal-mode frequency of the
/// tau-deformed oscillator.
double big_omega(double omega, double tau);

/// coth(omega / 2T) with the T = 0 limit equal to 1 and a series branch
/// for small arguments.
double thermal_coth(double omega, double temperature);

/// Displacement amplitude of the ordinary (tau = 0) spin-boson model,
/// (g/omega) [1 - exp(i omega t)].
std::complex<double> xi_hermitian(const Coupling& g, double omega, double t);

/// Displacement amplitude for the non-Hermitian bath:
///   8 omega sin^2(Omega t/2) / Omega^2 * (g/4 + tau^2 Re g) - i g sin(Omega t) / Omega.
std::complex<double> xi_nonhermitian(const Coupling& g, double omega, double tau, double t);

/// Decoherence exponent Gamma(t) of a thermal discrete bath, summed mode
/// by mode in sequence order. Always >= 0 and zero at t = 0.
double gamma_discrete(const DiscreteBath& bath, double t);

/// exp(-Gamma(t)), the modulus of <D^2> over the thermal bath.
double coherence_factor(const DiscreteBath& bath, double t);

/// Pure-dephasing map: populations unchanged, coherences scaled by
/// exp(-gamma). Rejects gamma < 0.
QubitState evolve_qubit(const QubitState& initial, double gamma);

}  // namespace ptdeph
