#include "ptdeph/study.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ptdeph/entanglement.hpp"

namespace ptdeph {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) {
        throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

struct Point {
    double tau;
    double theta;
    double t;
};

// Gamma at one point; quadrature failures are rethrown naming the point.
double evaluate(const OhmicSpectrum& base, const Point& p, const QuadratureSpec& quad) {
    OhmicSpectrum spec = base;
    spec.tau = p.tau;
    spec.theta = p.theta;
    try {
        return gamma_continuum_nh(spec, p.t, quad);
    } catch (const ConvergenceError& e) {
        std::ostringstream msg;
        msg.precision(12);
        msg << e.what() << " at tau=" << p.tau << ", theta=" << p.theta << ", t=" << p.t;
        throw ConvergenceError(msg.str());
    }
}

std::vector<double> evaluate_all(const OhmicSpectrum& base, const std::vector<Point>& points,
                                 const QuadratureSpec& quad, unsigned jobs) {
    std::vector<double> out(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) { out[i] = evaluate(base, points[i], quad); });
    return out;
}

double& coordinate(Point& p, Axis axis) {
    switch (axis) {
        case Axis::tau: return p.tau;
        case Axis::theta: return p.theta;
        case Axis::t: return p.t;
    }
    throw std::logic_error("unknown axis");
}

void require_bounds(const Bounds& b, const char* name) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
        throw std::invalid_argument(std::string(name) + " bounds must be finite with lo <= hi");
    }
}

}  // namespace

std::string_view axis_name(Axis axis) {
    switch (axis) {
        case Axis::tau: return "tau";
        case Axis::theta: return "theta";
        case Axis::t: return "t";
    }
    throw std::logic_error("unknown axis");
}

Axis parse_axis(std::string_view name) {
    if (name == "tau") return Axis::tau;
    if (name == "theta") return Axis::theta;
    if (name == "t") return Axis::t;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

void SweepGrid::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep grid for " + std::string(axis_name(axis)) + " is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw std::invalid_argument("sweep grid values must be finite");
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw std::invalid_argument("sweep grid for " + std::string(axis_name(axis)) +
                                        " must be strictly increasing");
        }
    }
    if (axis == Axis::t && values.front() < 0.0) throw std::invalid_argument("time grid must be >= 0");
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) throw std::invalid_argument("linspace needs count >= 1");
    if (count == 1) return {start};
    std::vector<double> out(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
    out.back() = stop;
    return out;
}

std::vector<double> parse_values(std::string_view text) {
    const auto first = text.find(':');
    if (first == std::string_view::npos) return {parse_double(text)};
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("range must be start:stop:count, got '" + std::string(text) + "'");
    }
    const double start = parse_double(text.substr(0, first));
    const double stop = parse_double(text.substr(first + 1, second - first - 1));
    const std::string_view count_text = text.substr(second + 1);
    std::size_t count = 0;
    const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count == 0) {
        throw std::invalid_argument("range count must be a positive integer, got '" + std::string(count_text) + "'");
    }
    if (count > 1 && !(stop > start)) throw std::invalid_argument("range needs stop > start");
    return linspace(start, stop, count);
}

Table sweep(const OhmicSpectrum& fixed, double t, const std::vector<SweepGrid>& grids, const QuadratureSpec& quad,
            unsigned jobs) {
    fixed.validate();
    quad.validate();
    for (std::size_t i = 0; i < grids.size(); ++i) {
        grids[i].validate();
        for (std::size_t j = 0; j < i; ++j) {
            if (grids[j].axis == grids[i].axis) throw std::invalid_argument("sweep grids must name distinct axes");
        }
    }

    Table table;
    for (const auto& g : grids) table.columns.emplace_back(axis_name(g.axis));
    table.columns.emplace_back("gamma");
    table.columns.emplace_back("coherence");

    std::size_t total = 1;
    for (const auto& g : grids) total *= g.values.size();

    std::vector<Point> points;
    points.reserve(total);
    std::vector<std::size_t> index(grids.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Point p{fixed.tau, fixed.theta, t};
        for (std::size_t k = 0; k < grids.size(); ++k) coordinate(p, grids[k].axis) = grids[k].values[index[k]];
        points.push_back(p);
        // Last grid varies fastest.
        for (std::size_t k = grids.size(); k-- > 0;) {
            if (++index[k] < grids[k].values.size()) break;
            index[k] = 0;
        }
    }
    if (!std::isfinite(t) || t < 0.0) {
        const bool time_swept = std::any_of(grids.begin(), grids.end(), [](const auto& g) { return g.axis == Axis::t; });
        if (!time_swept) throw std::invalid_argument("time must be finite and >= 0");
    }

    const auto gammas = evaluate_all(fixed, points, quad, jobs);
    table.rows.reserve(total);
    for (std::size_t n = 0; n < total; ++n) {
        std::vector<double> row;
        row.reserve(grids.size() + 2);
        for (const auto& g : grids) row.push_back(coordinate(points[n], g.axis));
        row.push_back(gammas[n]);
        row.push_back(std::exp(-gammas[n]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string_view figure_name(FigureId id) {
    switch (id) {
        case FigureId::fig1a: return "fig1a";
        case FigureId::fig1b: return "fig1b";
        case FigureId::fig2: return "fig2";
        case FigureId::fig3a: return "fig3a";
        case FigureId::fig3b: return "fig3b";
        case FigureId::fig4: return "fig4";
    }
    throw std::logic_error("unknown figure");
}

FigureId parse_figure(std::string_view name) {
    for (auto id : {FigureId::fig1a, FigureId::fig1b, FigureId::fig2, FigureId::fig3a, FigureId::fig3b,
                    FigureId::fig4}) {
        if (figure_name(id) == name) return id;
    }
    throw std::invalid_argument("unknown figure '" + std::string(name) + "'");
}

FigurePreset figure_preset(FigureId id) {
    FigurePreset p;
    p.id = id;
    p.base = OhmicSpectrum{1.0, 0.1, 0.0, 300.0, 0.0};
    const std::vector<double> tau_family{0.0, 0.5, 1.0, 2.0, 4.0};
    const std::vector<double> theta_family{0.0, kPi / 4, kPi / 2, 2 * kPi / 3, 3 * kPi / 4, kPi};
    switch (id) {
        case FigureId::fig1a:
            p.base.tau = 2.0;
            p.sweep = {Axis::t, linspace(0.0, 20.0, 401)};
            p.family = {Axis::theta, {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}};
            p.hermitian_reference = true;
            break;
        case FigureId::fig1b:
            p.base.amplitude = 0.1;
            p.t = 20.0;
            p.sweep = {Axis::theta, linspace(0.0, 2 * kPi, 721)};
            p.family = {Axis::tau, tau_family};
            break;
        case FigureId::fig2:
            p.base.theta = kPi / 2;
            p.sweep = {Axis::t, linspace(0.0, 20.0, 401)};
            p.family = {Axis::tau, tau_family};
            break;
        case FigureId::fig3a:
        case FigureId::fig3b:
            p.t = id == FigureId::fig3a ? 120.0 : 2.0;
            p.sweep = {Axis::tau, linspace(0.0, 4.0, 201)};
            p.family = {Axis::theta, theta_family};
            break;
        case FigureId::fig4:
            p.base.theta = kPi / 2;
            p.sweep = {Axis::tau, linspace(0.0, 20.0, 201)};
            p.family = {Axis::t, {2.0, 120.0}};
            break;
    }
    return p;
}

Table run_figure(const FigurePreset& preset, const QuadratureSpec& quad, unsigned jobs) {
    preset.base.validate();
    quad.validate();
    preset.sweep.validate();
    preset.family.validate();
    if (preset.sweep.axis == preset.family.axis) throw std::invalid_argument("figure sweep and family share an axis");

    Table table;
    table.columns = {"tau", "theta", "t", "gamma", "coherence"};

    std::vector<Point> points;
    for (double f : preset.family.values) {
        for (double s : preset.sweep.values) {
            Point p{preset.base.tau, preset.base.theta, preset.t};
            coordinate(p, preset.family.axis) = f;
            coordinate(p, preset.sweep.axis) = s;
            points.push_back(p);
        }
    }

    if (preset.hermitian_reference) {
        if (preset.sweep.axis != Axis::t) throw std::invalid_argument("hermitian reference needs a time sweep");
        const auto& ts = preset.sweep.values;
        std::vector<double> ref(ts.size());
        parallel_for(ts.size(), jobs, [&](std::size_t i) {
            try {
                ref[i] = gamma_hermitian(preset.base.amplitude, preset.base.cutoff, preset.base.temperature, ts[i], quad);
            } catch (const ConvergenceError& e) {
                std::ostringstream msg;
                msg.precision(12);
                msg << e.what() << " at tau=0 (hermitian), t=" << ts[i];
                throw ConvergenceError(msg.str());
            }
        });
        for (std::size_t i = 0; i < ts.size(); ++i) table.rows.push_back({0.0, 0.0, ts[i], ref[i], std::exp(-ref[i])});
    }

    const auto gammas = evaluate_all(preset.base, points, quad, jobs);
    for (std::size_t i = 0; i < points.size(); ++i) {
        table.rows.push_back({points[i].tau, points[i].theta, points[i].t, gammas[i], std::exp(-gammas[i])});
    }
    return table;
}

OptimizeResult optimize(const OptimizeRequest& request) {
    request.fixed.validate();
    request.quad.validate();
    if (!request.tau && !request.theta) throw std::invalid_argument("optimize needs at least one free parameter");
    if (request.tau) require_bounds(*request.tau, "tau");
    if (request.theta) require_bounds(*request.theta, "theta");
    if (request.grid_points < 64) throw std::invalid_argument("optimize needs at least 64 grid points per axis");
    if (!(request.x_tol > 0.0)) throw std::invalid_argument("optimize tolerance must be > 0");
    if (!std::isfinite(request.t) || request.t < 0.0) throw std::invalid_argument("time must be finite and >= 0");

    OptimizeResult result;
    auto record = [&](Point p, double g) { result.log.push_back({p.tau, p.theta, g}); };

    auto axis_grid = [&](const std::optional<Bounds>& b, double fixed_value) -> std::vector<double> {
        if (!b) return {fixed_value};
        if (b->lo == b->hi) return {b->lo};
        return linspace(b->lo, b->hi, request.grid_points);
    };
    const auto taus = axis_grid(request.tau, request.fixed.tau);
    const auto thetas = axis_grid(request.theta, request.fixed.theta);

    std::vector<Point> grid;
    grid.reserve(taus.size() * thetas.size());
    for (double tau : taus) {
        for (double theta : thetas) grid.push_back({tau, theta, request.t});
    }
    const auto gammas = evaluate_all(request.fixed, grid, request.quad, request.jobs);
    for (std::size_t i = 0; i < grid.size(); ++i) record(grid[i], gammas[i]);

    const auto best_of_log = [&] {
        return *std::min_element(result.log.begin(), result.log.end(),
                                 [](const Evaluation& a, const Evaluation& b) { return a.gamma < b.gamma; });
    };

    // Golden-section on each free axis, bracketing one grid step either side
    // of the current best point.
    auto refine = [&](Axis axis, const Bounds& bounds, const std::vector<double>& values) {
        if (values.size() < 2) return;
        const Evaluation best = best_of_log();
        Point centre{best.tau, best.theta, request.t};
        const double step = values[1] - values[0];
        const double x0 = coordinate(centre, axis);
        double a = std::max(bounds.lo, x0 - step);
        double b = std::min(bounds.hi, x0 + step);
        auto f = [&](double x) {
            Point p = centre;
            coordinate(p, axis) = x;
            const double g = evaluate(request.fixed, p, request.quad);
            record(p, g);
            return g;
        };
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = f(c);
        double fd = f(d);
        while (b - a > request.x_tol) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        f(0.5 * (a + b));
    };
    if (request.tau) refine(Axis::tau, *request.tau, taus);
    if (request.theta) refine(Axis::theta, *request.theta, thetas);

    const Evaluation best = best_of_log();
    result.tau = best.tau;
    result.theta = best.theta;
    result.gamma = best.gamma;
    return result;
}

CrossoverResult crossover(const OhmicSpectrum& fixed, double t, Bounds tau_range, const QuadratureSpec& quad,
                          std::size_t scan_points, double tol, unsigned jobs) {
    fixed.validate();
    quad.validate();
    require_bounds(tau_range, "tau");
    if (tau_range.lo < 0.0) throw std::invalid_argument("crossover range must have tau >= 0");
    if (scan_points < 2) throw std::invalid_argument("crossover needs at least 2 scan points");
    if (!(tol > 0.0)) throw std::invalid_argument("crossover tolerance must be > 0");
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("time must be finite and >= 0");

    CrossoverResult result;
    result.gamma_reference = evaluate(fixed, {0.0, fixed.theta, t}, quad);

    // tau = 0 is the reference itself, so it is dropped from the scan.
    std::vector<Point> scan;
    for (double tau : linspace(tau_range.lo, tau_range.hi, scan_points)) {
        if (tau > 0.0) scan.push_back({tau, fixed.theta, t});
    }
    if (scan.empty()) return result;
    const auto gammas = evaluate_all(fixed, scan, quad, jobs);
    auto diff = [&](double g) { return g - result.gamma_reference; };

    if (diff(gammas[0]) == 0.0) {
        result.found = true;
        result.tau_star = scan[0].tau;
        return result;
    }
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double d_lo = diff(gammas[i - 1]);
        const double d_hi = diff(gammas[i]);
        if (d_hi == 0.0) {
            result.found = true;
            result.tau_star = scan[i].tau;
            return result;
        }
        if ((d_lo < 0.0) == (d_hi < 0.0)) continue;

        double a = scan[i - 1].tau;
        double b = scan[i].tau;
        double fa = d_lo;
        while (b - a > tol) {
            const double m = 0.5 * (a + b);
            const double fm = diff(evaluate(fixed, {m, fixed.theta, t}, quad));
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        result.found = true;
        result.tau_star = 0.5 * (a + b);
        return result;
    }
    return result;
}

ConcurrenceSummary concurrence_for_gamma(double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    const double c = concurrence(dephased_bell(gamma)).concurrence;
    return {c, eof_from_concurrence(c)};
}

}  // namespace ptdeph
