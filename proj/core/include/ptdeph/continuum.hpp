// continuum.hpp: decoherence exponent for an Ohmic bath with exponential
// cutoff, J(omega) = A omega exp(-omega / Lambda).

#pragma once

#include <cstddef>
#include <optional>

#include "ptdeph/quadrature.hpp"

namespace ptdeph {

struct OhmicSpectrum {
    double amplitude{1.0};    // A, dimensionless
    double cutoff{0.1};       // Lambda
    double theta{0.0};        // coupling phase
    double temperature{0.0};  // k_B T in frequency units
    double tau{0.0};          // non-Hermiticity

    void validate() const;
};

struct QuadratureSpec {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    std::optional<double> omega_max;  // defaults to 60 * cutoff
    int min_panels_per_oscillation{8};
    std::size_t max_subdivisions{2'000'000};

    void validate() const;
    double upper_limit(double cutoff) const { return omega_max.value_or(60.0 * cutoff); }
};

double spectral_density(double omega, double amplitude, double cutoff);

/// Integrand of Gamma(t) for the non-Hermitian bath, pointwise equal to
/// 2 J(omega) |xi_omega(t)|^2 coth(omega / 2T) with a unit coupling of
/// phase theta. Below omega = 1e-6 * cutoff a cancellation-free form is
/// used; at omega = 0 it returns the limit 4 A T t^2.
double gamma_integrand_nh(double omega, const OhmicSpectrum& spec, double t);

/// Ordinary spin-boson integrand 4 A exp(-omega/Lambda) (1 - cos omega t) coth(omega/2T) / omega.
double gamma_integrand_hermitian(double omega, double amplitude, double cutoff, double temperature, double t);

/// Width of the first panel layout: min(Lambda / 8, 2 pi / (m max(t, 1) sqrt(1 + 4 tau^2))).
double initial_panel_width(double cutoff, double tau, double t, const QuadratureSpec& quad);

QuadratureResult integrate_gamma_nh(const OhmicSpectrum& spec, double t, const QuadratureSpec& quad = {});
QuadratureResult integrate_gamma_hermitian(double amplitude, double cutoff, double temperature, double t,
                                           const QuadratureSpec& quad = {});

/// Gamma(t) over [0, omega_max]. Throws ConvergenceError if the tolerance
/// cannot be met within the subdivision budget.
double gamma_continuum_nh(const OhmicSpectrum& spec, double t, const QuadratureSpec& quad = {});

/// Hermitian (tau = 0) decoherence exponent gamma(t).
double gamma_hermitian(double amplitude, double cutoff, double temperature, double t, const QuadratureSpec& quad = {});

}  // namespace ptdeph
