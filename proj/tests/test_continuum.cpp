#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ptdeph/continuum.hpp"
#include "ptdeph/dephasing.hpp"

using namespace ptdeph;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Hermitian exponent at high temperature from coth(x) = 1/x + x/3 - x^3/45,
// with each term integrated in closed form against e^{-a w} sin^2(b w).
double hermitian_high_t(double A, double cutoff, double T, double t) {
    const double a = 1.0 / cutoff;
    const double b = t / 2.0;
    const double i_m2 = b * std::atan(2 * b / a) - (a / 4) * std::log(1 + 4 * b * b / (a * a));
    const double i_0 = 0.5 * (1.0 / a - a / (a * a + 4 * b * b));
    const double i_2 = 0.5 * (2.0 / (a * a * a) - 2 * a * (a * a - 12 * b * b) / std::pow(a * a + 4 * b * b, 3));
    return 16 * A * T * i_m2 + 4 * A / (3 * T) * i_0 - A / (45 * T * T * T) * i_2;
}

OhmicSpectrum fig_settings(double tau, double theta) { return OhmicSpectrum{1.0, 0.1, theta, 300.0, tau}; }

}  // namespace

TEST_CASE("hermitian exponent matches the high-temperature closed form") {
    for (double t : {0.5, 2.0, 20.0, 120.0}) {
        CHECK(gamma_hermitian(1.0, 0.1, 300.0, t) == Approx(hermitian_high_t(1.0, 0.1, 300.0, t)).epsilon(1e-9));
    }
}

TEST_CASE("frozen high-precision reference values") {
    // Independent arbitrary-precision quadrature of 2 J |xi|^2 coth.
    CHECK(gamma_hermitian(1.0, 0.1, 300.0, 2.0) == Approx(476.850137987060).epsilon(1e-10));
    CHECK(gamma_hermitian(1.0, 0.1, 300.0, 20.0) == Approx(33829.8836826849).epsilon(1e-10));
    CHECK(gamma_continuum_nh(fig_settings(2.0, kPi / 2), 20.0) == Approx(8159.32057805675).epsilon(1e-10));
    CHECK(gamma_continuum_nh(fig_settings(2.0, kPi), 20.0) == Approx(111366.801896336).epsilon(1e-10));
    CHECK(gamma_continuum_nh(fig_settings(20.0, kPi / 2), 2.0) == Approx(80.1151855053132).epsilon(1e-10));
    CHECK(gamma_continuum_nh(fig_settings(1.0, kPi / 4), 120.0) == Approx(396734.642135319).epsilon(1e-10));
    CHECK(gamma_continuum_nh(fig_settings(0.5, 2 * kPi / 3), 10.0) == Approx(7706.02567968041).epsilon(1e-10));
    CHECK(gamma_continuum_nh(OhmicSpectrum{0.1, 0.1, 1.0, 300.0, 2.0}, 20.0) ==
          Approx(5068.1848784735).epsilon(1e-10));
}

TEST_CASE("integrand equals 2 J |xi|^2 coth computed from the displacement") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const OhmicSpectrum s{0.1 + u(rng), 0.05 + 0.5 * u(rng), 2 * kPi * u(rng), 500 * u(rng), -4 + 8 * u(rng)};
        const double t = 100 * u(rng);
        const double w = 1e-3 + 3 * u(rng);
        const double ref = 2 * spectral_density(w, s.amplitude, s.cutoff) *
                           std::norm(xi_nonhermitian(Coupling(1.0, s.theta), w, s.tau, t)) *
                           thermal_coth(w, s.temperature);
        CHECK(gamma_integrand_nh(w, s, t) == Approx(ref).epsilon(1e-11));
    }
}

TEST_CASE("integrand is continuous across the small-frequency branch") {
    const auto s = fig_settings(1.5, 2.0);
    const double edge = 1e-6 * s.cutoff;
    const double below = gamma_integrand_nh(edge * (1 - 1e-9), s, 7.0);
    const double above = gamma_integrand_nh(edge * (1 + 1e-9), s, 7.0);
    CHECK(below == Approx(above).epsilon(1e-8));
    CHECK(gamma_integrand_nh(0.0, s, 7.0) == Approx(4 * 1.0 * 300.0 * 49.0).epsilon(1e-12));
    CHECK(gamma_integrand_hermitian(0.0, 1.0, 0.1, 300.0, 7.0) == Approx(4 * 300.0 * 49.0).epsilon(1e-12));
    const double hb = gamma_integrand_hermitian(edge * (1 - 1e-9), 1.0, 0.1, 300.0, 7.0);
    const double ha = gamma_integrand_hermitian(edge * (1 + 1e-9), 1.0, 0.1, 300.0, 7.0);
    CHECK(hb == Approx(ha).epsilon(1e-8));
}

TEST_CASE("tau = 0 reduces to the hermitian exponent") {
    for (double theta : {0.0, 0.9, kPi / 2, 2.5}) {
        for (double t : {1.0, 20.0}) {
            CHECK(gamma_continuum_nh(fig_settings(0.0, theta), t) ==
                  Approx(gamma_hermitian(1.0, 0.1, 300.0, t)).epsilon(1e-9));
        }
    }
}

TEST_CASE("symmetries") {
    for (double theta : {0.2, 1.0, 2.2}) {
        const double g = gamma_continuum_nh(fig_settings(1.3, theta), 9.0);
        CHECK(gamma_continuum_nh(fig_settings(1.3, theta + kPi), 9.0) == Approx(g).epsilon(1e-10));
        CHECK(gamma_continuum_nh(fig_settings(-1.3, theta), 9.0) == Approx(g).epsilon(1e-12));
    }
    // Linear in the amplitude
    OhmicSpectrum s = fig_settings(0.8, 0.4);
    const double g1 = gamma_continuum_nh(s, 5.0);
    s.amplitude = 3.0;
    CHECK(gamma_continuum_nh(s, 5.0) == Approx(3 * g1).epsilon(1e-9));
}

TEST_CASE("edge cases and validation") {
    CHECK(gamma_continuum_nh(fig_settings(1.0, 1.0), 0.0) == 0.0);
    OhmicSpectrum zero = fig_settings(1.0, 1.0);
    zero.amplitude = 0.0;
    CHECK(gamma_continuum_nh(zero, 4.0) == 0.0);
    OhmicSpectrum cold = fig_settings(1.0, 1.0);
    cold.temperature = 0.0;
    CHECK(gamma_continuum_nh(cold, 4.0) > 0.0);
    CHECK_THROWS_AS(gamma_continuum_nh(fig_settings(1.0, 1.0), -1.0), std::invalid_argument);
    OhmicSpectrum bad = fig_settings(1.0, 1.0);
    bad.cutoff = 0.0;
    CHECK_THROWS_AS(gamma_continuum_nh(bad, 1.0), std::invalid_argument);
    QuadratureSpec q;
    q.rel_tol = 0.0;
    CHECK_THROWS_AS(gamma_continuum_nh(fig_settings(1.0, 1.0), 1.0, q), std::invalid_argument);
    QuadratureSpec tight;
    tight.rel_tol = 1e-300;
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 5;
    CHECK_THROWS_AS(gamma_continuum_nh(fig_settings(2.0, 1.0), 120.0, tight), ConvergenceError);
}
