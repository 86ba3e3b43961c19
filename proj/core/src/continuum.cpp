#include "ptdeph/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/sinc.hpp>

#include "ptdeph/dephasing.hpp"

namespace ptdeph {

namespace {

constexpr double kSmallOmega = 1e-6;  // guard, in units of the cutoff

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

// omega * coth(omega / 2T); equals omega at T = 0 and 2T at omega = 0.
double omega_coth(double omega, double temperature) {
    if (temperature == 0.0) return omega;
    const double x = omega / (2.0 * temperature);
    if (x < 1e-4) return 2.0 * temperature * (1.0 + x * x / 3.0 - x * x * x * x / 45.0);
    return omega / std::tanh(x);
}

double sinc(double x) { return boost::math::sinc_pi(x); }

}  // namespace

void OhmicSpectrum::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be >= 0");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("cutoff must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw std::invalid_argument("temperature must be >= 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be > 0");
    if (min_panels_per_oscillation < 4) throw std::invalid_argument("min_panels_per_oscillation must be >= 4");
    if (omega_max && !(*omega_max > 0.0)) throw std::invalid_argument("omega_max must be > 0");
    if (max_subdivisions == 0) throw std::invalid_argument("max_subdivisions must be > 0");
}

double spectral_density(double omega, double amplitude, double cutoff) {
    if (!(omega >= 0.0)) throw std::invalid_argument("spectral density needs omega >= 0");
    if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be > 0");
    return amplitude * omega * std::exp(-omega / cutoff);
}

double gamma_integrand_nh(double omega, const OhmicSpectrum& spec, double t) {
    const double tau2 = spec.tau * spec.tau;
    const double stretch = std::sqrt(1.0 + 4.0 * tau2);
    const double Omega = omega * stretch;
    // theta enters through sin(theta)cos(theta) and cos^2(theta) only; reduce
    // modulo pi first so theta and theta + pi give the same coefficients.
    const double th = std::remainder(spec.theta, std::numbers::pi);
    const double sin_cos = 0.5 * std::sin(2.0 * th);
    const double cos_sq = 0.5 * (1.0 + std::cos(2.0 * th));
    const double envelope = 2.0 * spec.amplitude * std::exp(-omega / spec.cutoff);

    if (omega < kSmallOmega * spec.cutoff) {
        // |xi|^2 for unit coupling with xi = E (e^{i theta}/4 + tau^2 cos theta) - i e^{i theta} S,
        // E = 8 w sin^2(W t/2)/W^2 = 2 w t^2 sinc^2(W t/2), S = sin(W t)/W = t sinc(W t).
        const double half = sinc(0.5 * Omega * t);
        const double E = 2.0 * omega * t * t * half * half;
        const double S = t * sinc(Omega * t);
        const double c = std::cos(th);
        const double s = std::sin(th);
        const double re = E * c / 4.0 + E * tau2 * c + s * S;
        const double im = E * s / 4.0 - c * S;
        return envelope * omega_coth(omega, spec.temperature) * (re * re + im * im);
    }

    const double st = std::sin(Omega * t);
    const double sh = std::sin(0.5 * Omega * t);
    const double sh2 = sh * sh;
    const double O2 = Omega * Omega;
    const double bracket = O2 * st * st + 16.0 * tau2 * omega * Omega * sin_cos * st * sh2 +
                           4.0 * omega * omega * sh2 * sh2 * (1.0 + 8.0 * tau2 * (1.0 + 2.0 * tau2) * cos_sq);
    return envelope * omega / (O2 * O2) * bracket * thermal_coth(omega, spec.temperature);
}

double gamma_integrand_hermitian(double omega, double amplitude, double cutoff, double temperature, double t) {
    const double envelope = amplitude * std::exp(-omega / cutoff);
    if (omega < kSmallOmega * cutoff) {
        // 8 A e sin^2(w t/2) coth / w = 2 A e t^2 sinc^2(w t/2) (w coth)
        const double half = sinc(0.5 * omega * t);
        return 2.0 * envelope * t * t * half * half * omega_coth(omega, temperature);
    }
    const double sh = std::sin(0.5 * omega * t);
    return 8.0 * envelope * sh * sh * thermal_coth(omega, temperature) / omega;
}

double initial_panel_width(double cutoff, double tau, double t, const QuadratureSpec& quad) {
    const double period = 2.0 * std::numbers::pi /
                          (quad.min_panels_per_oscillation * std::max(t, 1.0) * std::sqrt(1.0 + 4.0 * tau * tau));
    return std::min(cutoff / 8.0, period);
}

QuadratureResult integrate_gamma_nh(const OhmicSpectrum& spec, double t, const QuadratureSpec& quad) {
    spec.validate();
    quad.validate();
    require_time(t);
    if (t == 0.0 || spec.amplitude == 0.0) return {};
    const PanelTolerance tol{quad.rel_tol, quad.abs_tol, quad.max_subdivisions};
    return integrate_panels([&](double w) { return gamma_integrand_nh(w, spec, t); }, 0.0,
                            quad.upper_limit(spec.cutoff), initial_panel_width(spec.cutoff, spec.tau, t, quad), tol);
}

QuadratureResult integrate_gamma_hermitian(double amplitude, double cutoff, double temperature, double t,
                                           const QuadratureSpec& quad) {
    OhmicSpectrum spec{amplitude, cutoff, 0.0, temperature, 0.0};
    spec.validate();
    quad.validate();
    require_time(t);
    if (t == 0.0 || amplitude == 0.0) return {};
    const PanelTolerance tol{quad.rel_tol, quad.abs_tol, quad.max_subdivisions};
    return integrate_panels(
        [&](double w) { return gamma_integrand_hermitian(w, amplitude, cutoff, temperature, t); }, 0.0,
        quad.upper_limit(cutoff), initial_panel_width(cutoff, 0.0, t, quad), tol);
}

double gamma_continuum_nh(const OhmicSpectrum& spec, double t, const QuadratureSpec& quad) {
    return integrate_gamma_nh(spec, t, quad).value;
}

double gamma_hermitian(double amplitude, double cutoff, double temperature, double t, const QuadratureSpec& quad) {
    return integrate_gamma_hermitian(amplitude, cutoff, temperature, t, quad).value;
}

}  // namespace ptdeph
