// quadrature.hpp: adaptive panel quadrature for oscillatory integrands.
//
// The interval is first cut into uniform panels no wider than a caller-chosen
// width (a fraction of the oscillation period), each panel is integrated with
// the 15-point Gauss-Kronrod rule, then the panel with the largest error
// estimate is bisected until the summed estimate meets the tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ptdeph {

/// Raised when an integral cannot meet its tolerance within the
/// subdivision budget. Never swallowed into a best-effort value.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PanelTolerance {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    std::size_t max_subdivisions{2'000'000};
};

struct QuadratureResult {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t panels{0};
    std::size_t subdivisions{0};
};

namespace detail {

/// One Gauss-Kronrod (7, 15) panel: returns the Kronrod value and
/// |Kronrod - Gauss| scaled to the panel width.
template <typename F>
std::pair<double, double> kronrod15(F& f, double lo, double hi) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    // Kronrod abscissae: x[0] = 0 and the even indices are the Gauss nodes.
    const double f0 = f(mid);
    double kron = f0 * wk[0];
    double gauss = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        kron += pair * wk[i];
        if (i % 2 == 0) gauss += pair * wg[i / 2];
    }
    return {half * kron, half * std::abs(kron - gauss)};
}

}  // namespace detail

template <typename F>
QuadratureResult integrate_panels(F&& f, double a, double b, double initial_width, const PanelTolerance& tol) {
    if (!(b >= a)) throw std::invalid_argument("integration interval must satisfy a <= b");
    if (!(initial_width > 0.0)) throw std::invalid_argument("initial panel width must be > 0");
    if (!(tol.rel_tol > 0.0) || !(tol.abs_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be > 0");
    }
    QuadratureResult out;
    if (a == b) return out;

    struct Panel {
        double lo, hi, value, error;
        bool active;
    };
    std::vector<Panel> panels;
    auto evaluate = [&](double lo, double hi) {
        const auto [v, err] = detail::kronrod15(f, lo, hi);
        panels.push_back(Panel{lo, hi, v, err, true});
        return panels.size() - 1;
    };

    const auto n0 = static_cast<std::size_t>(std::ceil((b - a) / initial_width));
    const double h = (b - a) / static_cast<double>(n0);
    // Largest error on top; ties resolve to the lowest panel index so the
    // refinement order is reproducible.
    auto worse = [&](std::size_t i, std::size_t j) {
        if (panels[i].error != panels[j].error) return panels[i].error < panels[j].error;
        return i > j;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t k = 0; k < n0; ++k) {
        const double lo = a + h * static_cast<double>(k);
        const double hi = (k + 1 == n0) ? b : a + h * static_cast<double>(k + 1);
        const auto idx = evaluate(lo, hi);
        total += panels[idx].value;
        total_err += panels[idx].error;
        queue.push(idx);
    }

    while (total_err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
        if (out.subdivisions >= tol.max_subdivisions) {
            throw ConvergenceError("quadrature did not converge within " + std::to_string(tol.max_subdivisions) +
                                   " subdivisions (error estimate " + std::to_string(total_err) + ")");
        }
        const std::size_t worst = queue.top();
        queue.pop();
        const Panel parent = panels[worst];
        const double mid = 0.5 * (parent.lo + parent.hi);
        if (!(mid > parent.lo && mid < parent.hi)) {
            throw ConvergenceError("quadrature panel collapsed to machine resolution near omega = " +
                                   std::to_string(parent.lo));
        }
        panels[worst].active = false;
        const auto left = evaluate(parent.lo, mid);
        const auto right = evaluate(mid, parent.hi);
        total += panels[left].value + panels[right].value - parent.value;
        total_err += panels[left].error + panels[right].error - parent.error;
        queue.push(left);
        queue.push(right);
        ++out.subdivisions;
    }

    // Final sum in ascending-abscissa order so the result does not depend on
    // the running-update history.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    double value = 0.0;
    double err = 0.0;
    for (const auto& p : panels) {
        if (!p.active) continue;
        value += p.value;
        err += p.error;
    }
    out.value = value;
    out.error_estimate = err;
    out.panels = panels.size() - out.subdivisions;
    return out;
}

}  // namespace ptdeph
