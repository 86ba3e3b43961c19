// study.hpp: parameter sweeps, figure presets, the (tau, theta) optimizer
// and the tau crossover search over the Ohmic-continuum decoherence exponent.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptdeph/continuum.hpp"

namespace ptdeph {

enum class Axis { tau, theta, t };

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view name);

/// Values of one swept parameter; strictly increasing and nonempty.
struct SweepGrid {
    Axis axis{Axis::t};
    std::vector<double> values;

    void validate() const;
};

/// count evenly spaced points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

/// Parses a scalar ("2.5") or an inclusive range "start:stop:count".
std::vector<double> parse_values(std::string_view text);

/// Numeric table; every row has one entry per column.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. If any call
/// throws, the exception of the lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn);

/// Cartesian product of the grids, evaluated with gamma_continuum_nh.
/// Columns: each grid's axis in declaration order, then gamma, coherence.
/// Rows are in lexicographic grid order regardless of `jobs`. `t` is used
/// when no grid sweeps time. ConvergenceError messages name the failing
/// parameter tuple.
Table sweep(const OhmicSpectrum& fixed, double t, const std::vector<SweepGrid>& grids, const QuadratureSpec& quad,
            unsigned jobs = 1);

enum class FigureId { fig1a, fig1b, fig2, fig3a, fig3b, fig4 };

std::string_view figure_name(FigureId id);
FigureId parse_figure(std::string_view name);

/// One figure: a base spectrum and time, a swept axis, and a family of
/// curves over a second axis.
struct FigurePreset {
    FigureId id{FigureId::fig1a};
    OhmicSpectrum base{};
    double t{0.0};
    SweepGrid sweep{};
    SweepGrid family{};
    bool hermitian_reference{false};  // co-emit the tau = 0 curve (tau = 0, theta = 0 rows)
};

FigurePreset figure_preset(FigureId id);

/// Columns tau, theta, t, gamma, coherence; rows ordered family-major.
/// The Hermitian reference curve, when requested, comes first.
Table run_figure(const FigurePreset& preset, const QuadratureSpec& quad, unsigned jobs = 1);

struct Bounds {
    double lo{0.0};
    double hi{0.0};
};

struct OptimizeRequest {
    OhmicSpectrum fixed{};
    double t{0.0};
    std::optional<Bounds> tau;    // free when set
    std::optional<Bounds> theta;  // free when set
    QuadratureSpec quad{};
    std::size_t grid_points{64};
    double x_tol{1e-4};
    unsigned jobs{1};
};

struct Evaluation {
    double tau{0.0};
    double theta{0.0};
    double gamma{0.0};
};

struct OptimizeResult {
    double tau{0.0};
    double theta{0.0};
    double gamma{0.0};
    std::vector<Evaluation> log;  // every point evaluated, in order
};

/// Grid scan over the free axes, then golden-section refinement of each
/// free axis around the best grid point. Returns the best point evaluated.
OptimizeResult optimize(const OptimizeRequest& request);

struct CrossoverResult {
    bool found{false};
    double tau_star{0.0};
    double gamma_reference{0.0};  // Gamma at tau = 0
};

/// Finds the first tau > 0 in the range with Gamma(tau) = Gamma(0): scans
/// `scan_points` values for a sign change, then bisects to `tol`.
CrossoverResult crossover(const OhmicSpectrum& fixed, double t, Bounds tau_range, const QuadratureSpec& quad,
                          std::size_t scan_points = 81, double tol = 1e-3, unsigned jobs = 1);

struct ConcurrenceSummary {
    double concurrence{0.0};
    double entanglement_of_formation{0.0};
};

/// Concurrence and E_f of the Bell state after one qubit dephased by gamma.
ConcurrenceSummary concurrence_for_gamma(double gamma);

}  // namespace ptdeph

#include "ptdeph/detail/parallel.hpp"
