// ptdeph: command-line front end for the dephasing library.
//
// Exit codes: 0 success, 2 invalid arguments, 3 quadrature non-convergence,
// 4 oracle validation failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptdeph/bath_file.hpp"
#include "ptdeph/continuum.hpp"
#include "ptdeph/dephasing.hpp"
#include "ptdeph/oracle.hpp"
#include "ptdeph/output.hpp"
#include "ptdeph/study.hpp"

namespace {

using namespace ptdeph;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitOracle = 4;

// Every flag is held as text until flags and config have been merged, so
// both sources go through the same parsing.
struct Options {
    std::map<std::string, std::string> values;  // key uses underscores
    std::string config;
};

const std::vector<std::pair<std::string, std::string>> kCommonFlags = {
    {"tau", "non-Hermiticity tau (scalar or start:stop:count)"},
    {"theta", "coupling phase theta (scalar or start:stop:count)"},
    {"A", "spectral amplitude A"},
    {"cutoff", "spectral cutoff Lambda"},
    {"temp", "temperature T"},
    {"t", "time (scalar or start:stop:count)"},
    {"modes_file", "CSV of discrete modes with header omega,g_abs,theta"},
    {"rel_tol", "quadrature relative tolerance"},
    {"max_subdivisions", "quadrature panel bisection budget"},
    {"out", "output path (default stdout)"},
    {"format", "csv or json"},
    {"jobs", "worker threads"},
};

std::string flag_name(std::string key) {
    for (auto& c : key) {
        if (c == '_') c = '-';
    }
    return "--" + key;
}

void add_flag(CLI::App* cmd, Options& opts, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag_name(key), [&opts, key](const std::string& v) { opts.values[key] = v; }, help);
}

void add_common(CLI::App* cmd, Options& opts) {
    for (const auto& [key, help] : kCommonFlags) add_flag(cmd, opts, key, help);
    cmd->add_option("--config", opts.config, "JSON file of flag values (hyphens as underscores)");
}

// Fills keys not given on the command line from the config file.
void merge_config(Options& opts) {
    if (opts.config.empty()) return;
    std::ifstream in(opts.config);
    if (!in) throw std::invalid_argument("cannot open config file '" + opts.config + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key.find('-') != std::string::npos) {
            throw std::invalid_argument("config key '" + key + "' must use underscores");
        }
        if (opts.values.count(key)) continue;
        if (value.is_string()) {
            opts.values[key] = value.get<std::string>();
        } else if (value.is_number()) {
            std::ostringstream s;
            s.precision(17);
            s << value.get<double>();
            opts.values[key] = s.str();
        } else if (value.is_boolean()) {
            opts.values[key] = value.get<bool>() ? "true" : "false";
        } else {
            throw std::invalid_argument("config key '" + key + "' must be a string, number or boolean");
        }
    }
}

class Resolved {
public:
    explicit Resolved(const Options& opts) : values_(opts.values) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string text(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const auto v = parse_values(values_.at(key));
        if (v.size() != 1) throw std::invalid_argument(flag_name(key) + " must be a single number");
        return v.front();
    }

    std::optional<std::vector<double>> list(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return parse_values(values_.at(key));
    }

    bool is_range(const std::string& key) const { return has(key) && values_.at(key).find(':') != std::string::npos; }

    std::pair<double, double> bounds(const std::string& key, std::pair<double, double> fallback) const {
        if (!has(key)) return fallback;
        const std::string& s = values_.at(key);
        const auto colon = s.find(':');
        if (colon == std::string::npos || s.find(':', colon + 1) != std::string::npos) {
            throw std::invalid_argument(flag_name(key) + " must be lo:hi");
        }
        const double lo = parse_values(s.substr(0, colon)).front();
        const double hi = parse_values(s.substr(colon + 1)).front();
        if (lo > hi) throw std::invalid_argument(flag_name(key) + " needs lo <= hi");
        return {lo, hi};
    }

    unsigned jobs() const {
        const double j = number("jobs", std::max(1u, std::thread::hardware_concurrency()));
        if (!(j >= 1.0) || j != std::floor(j) || j > 1024) throw std::invalid_argument("--jobs must be a positive integer");
        return static_cast<unsigned>(j);
    }

    QuadratureSpec quad() const {
        QuadratureSpec q;
        q.rel_tol = number("rel_tol", q.rel_tol);
        const double subdivisions = number("max_subdivisions", static_cast<double>(q.max_subdivisions));
        if (!(subdivisions >= 1.0) || subdivisions != std::floor(subdivisions)) {
            throw std::invalid_argument("--max-subdivisions must be a positive integer");
        }
        q.max_subdivisions = static_cast<std::size_t>(subdivisions);
        q.validate();
        return q;
    }

    OhmicSpectrum spectrum(OhmicSpectrum base) const {
        base.amplitude = number("A", base.amplitude);
        base.cutoff = number("cutoff", base.cutoff);
        base.temperature = number("temp", base.temperature);
        if (has("tau") && !is_range("tau")) base.tau = number("tau", base.tau);
        if (has("theta") && !is_range("theta")) base.theta = number("theta", base.theta);
        base.validate();
        return base;
    }

private:
    std::map<std::string, std::string> values_;
};

// Default parameters shared by gamma, sweep, optimize and crossover.
OhmicSpectrum default_spectrum() { return OhmicSpectrum{1.0, 0.1, 0.0, 300.0, 0.0}; }

class Output {
public:
    explicit Output(const Resolved& r) : format_(r.text("format", "csv")) {
        if (format_ != "csv" && format_ != "json") throw std::invalid_argument("--format must be csv or json");
        path_ = r.text("out", "");
    }

    void table(const Table& t) const {
        emit([&](std::ostream& os) {
            if (format_ == "json") {
                write_json(os, t);
            } else {
                write_csv(os, t);
            }
        });
    }

    template <typename Fn>
    void emit(Fn&& fn) const {
        if (path_.empty()) {
            fn(std::cout);
            std::cout.flush();
            return;
        }
        std::ofstream file(path_, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file '" + path_ + "'");
        fn(file);
        if (!file) throw std::runtime_error("failed writing '" + path_ + "'");
    }

private:
    std::string format_;
    std::string path_;
};

int run_gamma(const Resolved& r) {
    const Output out(r);
    const auto times = r.list("t").value_or(std::vector<double>{20.0});
    SweepGrid tg{Axis::t, times};
    tg.validate();
    if (r.has("modes_file")) {
        DiscreteBath bath{load_modes_csv(r.text("modes_file", "")), r.number("temp", 300.0), r.number("tau", 0.0)};
        bath.validate();
        Table table{{"t", "gamma", "coherence"}, {}};
        for (double t : times) {
            const double g = gamma_discrete(bath, t);
            table.rows.push_back({t, g, std::exp(-g)});
        }
        out.table(table);
        return kExitOk;
    }
    out.table(sweep(r.spectrum(default_spectrum()), 0.0, {tg}, r.quad(), r.jobs()));
    return kExitOk;
}

int run_sweep(const Resolved& r) {
    const Output out(r);
    std::vector<SweepGrid> grids;
    for (const auto& [key, axis] : {std::pair{"tau", Axis::tau}, {"theta", Axis::theta}, {"t", Axis::t}}) {
        if (r.is_range(key)) grids.push_back({axis, *r.list(key)});
    }
    const double t = r.is_range("t") ? 0.0 : r.number("t", 20.0);
    if (grids.empty()) grids.push_back({Axis::t, {t}});
    out.table(sweep(r.spectrum(default_spectrum()), t, grids, r.quad(), r.jobs()));
    return kExitOk;
}

int run_figure_cmd(const Resolved& r, const std::string& id) {
    const Output out(r);
    FigurePreset preset = figure_preset(parse_figure(id));
    // A flag on the swept or family axis replaces that axis' values;
    // otherwise it sets the fixed parameter.
    for (const auto& [key, axis] : {std::pair{"tau", Axis::tau}, {"theta", Axis::theta}, {"t", Axis::t}}) {
        if (!r.has(key)) continue;
        const auto values = *r.list(key);
        if (preset.sweep.axis == axis) {
            preset.sweep.values = values;
        } else if (preset.family.axis == axis) {
            preset.family.values = values;
        } else if (values.size() == 1) {
            if (axis == Axis::t) {
                preset.t = values.front();
            } else if (axis == Axis::tau) {
                preset.base.tau = values.front();
            } else {
                preset.base.theta = values.front();
            }
        } else {
            throw std::invalid_argument(flag_name(key) + " is fixed in " + id + " and takes a single value");
        }
    }
    preset.base.amplitude = r.number("A", preset.base.amplitude);
    preset.base.cutoff = r.number("cutoff", preset.base.cutoff);
    preset.base.temperature = r.number("temp", preset.base.temperature);
    out.table(run_figure(preset, r.quad(), r.jobs()));
    return kExitOk;
}

int run_optimize(const Resolved& r, const std::vector<std::string>& free, std::size_t grid_points) {
    const Output out(r);
    OptimizeRequest req;
    req.fixed = r.spectrum(default_spectrum());
    req.t = r.number("t", 20.0);
    req.quad = r.quad();
    req.grid_points = grid_points;
    req.jobs = r.jobs();
    for (const auto& name : free) {
        if (name == "tau") {
            const auto [lo, hi] = r.bounds("tau_bounds", {0.0, 20.0});
            req.tau = Bounds{lo, hi};
        } else if (name == "theta") {
            const auto [lo, hi] = r.bounds("theta_bounds", {0.0, std::numbers::pi});
            req.theta = Bounds{lo, hi};
        } else {
            throw std::invalid_argument("--free accepts tau and theta, got '" + name + "'");
        }
    }
    const auto res = optimize(req);
    out.table(Table{{"tau", "theta", "t", "gamma", "coherence"},
                    {{res.tau, res.theta, req.t, res.gamma, std::exp(-res.gamma)}}});
    return kExitOk;
}

int run_crossover(const Resolved& r, std::size_t scan_points) {
    const Output out(r);
    const auto spec = r.spectrum(default_spectrum());
    const double t = r.number("t", 120.0);
    const auto [lo, hi] = r.bounds("tau_range", {0.0, 4.0});
    const auto res = crossover(spec, t, Bounds{lo, hi}, r.quad(), scan_points, 1e-3, r.jobs());
    if (!res.found) std::cerr << "no crossover in interval [" << lo << ", " << hi << "]\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.table(Table{{"theta", "t", "found", "tau_star", "gamma_reference"},
                    {{spec.theta, t, res.found ? 1.0 : 0.0, res.found ? res.tau_star : nan, res.gamma_reference}}});
    return kExitOk;
}

int run_concurrence(const Resolved& r) {
    const Output out(r);
    if (!r.has("gamma")) throw std::invalid_argument("--gamma is required");
    const double g = r.number("gamma", 0.0);
    const auto res = concurrence_for_gamma(g);
    out.table(Table{{"gamma", "concurrence", "eof"}, {{g, res.concurrence, res.entanglement_of_formation}}});
    return kExitOk;
}

int run_oracle_cmd(const Resolved& r) {
    const Output out(r);
    OracleSettings s;
    if (r.has("modes_file")) {
        s.modes = load_modes_csv(r.text("modes_file", ""));
    } else {
        s.modes.front() = BathMode{r.number("omega", 1.0), Coupling(r.number("g_abs", 0.1), r.number("theta", std::numbers::pi / 2))};
    }
    s.tau = r.number("tau", s.tau);
    s.temperature = r.number("temp", s.temperature);
    if (r.has("t")) s.times = *r.list("t");
    const double fock = r.number("fock_dim", s.fock_dim);
    if (fock != std::floor(fock) || fock < 2) throw std::invalid_argument("--fock-dim must be an integer >= 2");
    s.fock_dim = static_cast<int>(fock);
    const double max_dim = r.number("max_dim", static_cast<double>(s.budget.max_total_dim));
    if (max_dim != std::floor(max_dim) || max_dim < 4) throw std::invalid_argument("--max-dim must be an integer >= 4");
    s.budget.max_total_dim = static_cast<std::size_t>(max_dim);
    const auto report = run_oracle(s);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    out.emit([&](std::ostream& os) { write_json(os, report); });
    return report.passed() ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit dephasing in a non-Hermitian bosonic bath"};
    app.require_subcommand(1);

    Options opts;
    std::string figure_id;
    std::vector<std::string> free_axes;
    std::size_t grid_points = 64;
    std::size_t scan_points = 81;

    auto* gamma = app.add_subcommand("gamma", "decoherence exponent over time (continuum, or discrete with --modes-file)");
    auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian sweep over any of --tau, --theta, --t given as ranges");
    auto* figure = app.add_subcommand("figure", "generate a figure preset table");
    auto* optimize_cmd = app.add_subcommand("optimize", "minimize the decoherence exponent over tau and/or theta");
    auto* crossover_cmd = app.add_subcommand("crossover", "first tau > 0 where Gamma(tau) returns to Gamma(0)");
    auto* concurrence_cmd = app.add_subcommand("concurrence", "concurrence and entanglement of formation for a given Gamma");
    auto* oracle = app.add_subcommand("oracle", "exact truncated-Fock validation of the closed forms");

    for (auto* cmd : {gamma, sweep_cmd, figure, optimize_cmd, crossover_cmd, concurrence_cmd, oracle}) {
        add_common(cmd, opts);
    }
    figure->add_option("id", figure_id, "fig1a, fig1b, fig2, fig3a, fig3b or fig4")->required();
    optimize_cmd->add_option("--free", free_axes, "free parameters: tau, theta")->delimiter(',')->required();
    add_flag(optimize_cmd, opts, "tau_bounds", "tau search bounds lo:hi (default 0:20)");
    add_flag(optimize_cmd, opts, "theta_bounds", "theta search bounds lo:hi (default 0:pi)");
    optimize_cmd->add_option("--grid-points", grid_points, "coarse grid points per free axis (>= 64)");
    add_flag(crossover_cmd, opts, "tau_range", "tau search interval lo:hi (default 0:4)");
    crossover_cmd->add_option("--scan-points", scan_points, "scan points before bisection");
    add_flag(concurrence_cmd, opts, "gamma", "decoherence exponent Gamma >= 0");
    add_flag(oracle, opts, "omega", "mode frequency (single-mode run)");
    add_flag(oracle, opts, "g_abs", "coupling magnitude (single-mode run)");
    add_flag(oracle, opts, "fock_dim", "starting Fock dimension per mode");
    add_flag(oracle, opts, "max_dim", "budget on 2 * product of Fock dimensions (default 3200)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        merge_config(opts);
        const Resolved r(opts);
        if (*gamma) return run_gamma(r);
        if (*sweep_cmd) return run_sweep(r);
        if (*figure) return run_figure_cmd(r, figure_id);
        if (*optimize_cmd) return run_optimize(r, free_axes, grid_points);
        if (*crossover_cmd) return run_crossover(r, scan_points);
        if (*concurrence_cmd) return run_concurrence(r);
        if (*oracle) return run_oracle_cmd(r);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitInvalid;
}
