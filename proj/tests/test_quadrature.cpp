#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptdeph/quadrature.hpp"

using namespace ptdeph;
using doctest::Approx;

TEST_CASE("single Kronrod panel is exact for low-degree polynomials") {
    auto cubic = [](double x) { return 3 * x * x * x - x + 2; };
    const auto [value, err] = detail::kronrod15(cubic, -1.0, 2.0);
    CHECK(value == Approx(3 * (16.0 - 1.0) / 4 - (4.0 - 1.0) / 2 + 6).epsilon(1e-14));
    CHECK(err < 1e-12);
}

TEST_CASE("oscillatory integrals") {
    // int_0^inf e^{-x} cos(a x) dx = 1 / (1 + a^2), truncated far into the tail
    for (double a : {0.0, 5.0, 80.0}) {
        const auto r = integrate_panels([a](double x) { return std::exp(-x) * std::cos(a * x); }, 0.0, 60.0,
                                        0.05 / std::max(a, 1.0), {1e-12, 1e-15, 100000});
        CHECK(r.value == Approx(1.0 / (1.0 + a * a)).epsilon(1e-11));
        CHECK(r.error_estimate <= 1e-12 * std::abs(r.value) + 1e-15);
    }
}

TEST_CASE("adaptive refinement handles an integrable kink") {
    const auto r = integrate_panels([](double x) { return std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, 0.25,
                                    {1e-10, 1e-14, 100000});
    const double exact = (2.0 / 3.0) * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5));
    CHECK(r.value == Approx(exact).epsilon(1e-9));
    CHECK(r.subdivisions > 0);
}

TEST_CASE("budget exhaustion raises ConvergenceError") {
    auto f = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
    CHECK_THROWS_AS(integrate_panels(f, 0.0, 1.0, 0.5, {1e-14, 1e-16, 10}), ConvergenceError);
}

TEST_CASE("deterministic") {
    auto f = [](double x) { return std::exp(-x) * std::sin(40 * x) * std::sin(40 * x); };
    const auto a = integrate_panels(f, 0.0, 20.0, 0.01, {});
    const auto b = integrate_panels(f, 0.0, 20.0, 0.01, {});
    CHECK(a.value == b.value);
    CHECK(a.panels == b.panels);
}
