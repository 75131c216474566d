// alist: scattering, reconstruction, round trip and evolution from the shell.
//
// Exit codes: 0 ok, 1 unexpected error, 2 bad input or options,
// 3 invariant violation, 4 reconstruction did not converge,
// 5 oracle window breach, 6 round-trip invariant check failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alist/circle.hpp"
#include "alist/errors.hpp"
#include "alist/evolution.hpp"
#include "alist/inverse.hpp"
#include "alist/io.hpp"
#include "alist/lattice.hpp"
#include "alist/scattering.hpp"

using namespace alist;

namespace {

enum Exit { ok = 0, unexpected = 1, bad_input = 2, invariant = 3, no_convergence = 4, window_breach = 5,
            roundtrip_failed = 6 };

struct Options {
    std::string input;
    std::string output;
    std::string csv;
    std::string plot;
    std::string series;
    std::vector<int> window;
    std::vector<double> times{0.0};
    std::string method = "both";
    std::string solver = "cg";
    int sites = 32;
    int buffer = -1;
    double radius = 0.3;
    bool random = false;
    RunConfig config;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit_json(const std::string& path, const json& j)
{
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << '\n';
    else
        write_json_file(path, j);
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    return f;
}

// Summary lines go to stderr when stdout carries the JSON payload.
std::ostream& summary(const Options& o) { return (o.output.empty() || o.output == "-") ? std::cerr : std::cout; }

Potential load_potential(const Options& o)
{
    if (o.input.empty())
        throw SchemaError("--input is required");
    return potential_from_json(read_json_file(o.input));
}

void print_sites_failed(const ReconstructionError& e)
{
    std::cerr << "alist: " << e.what() << '\n';
}

int cmd_scatter(const Options& o)
{
    const Potential q = load_potential(o);
    const ScatteringData s = compute_scattering(q, make_grid(o.config.grid_n));
    emit_json(o.output, to_json(s));
    std::ostream& os = summary(o);
    os << std::setprecision(12);
    os << "c_inf  " << s.c_inf << '\n' << "sup|r|  " << sup_norm(s.r) << '\n';
    const FourierSeries rh = analyze(s.r);
    for (int k = 1; k <= 3; ++k)
        os << "hk_norm(r, " << k << ")  " << hk_norm(rh, k) << '\n';
    if (!o.plot.empty()) {
        auto f = open_out(o.plot + "_r.dat");
        write_reflection_dat(f, s.r);
    }
    return ok;
}

int cmd_reconstruct(const Options& o)
{
    if (o.input.empty())
        throw SchemaError("--input is required");
    const ScatteringData s = scattering_from_json(read_json_file(o.input));
    const ReflectionData rd = prepare_reflection(s.r);
    const auto w = o.config.window;

    auto write_csv = [&](const std::vector<SiteReconstruction>& sites) {
        if (o.csv.empty())
            return;
        if (o.csv == "-") {
            write_site_csv(std::cout, sites);
        } else {
            auto f = open_out(o.csv);
            write_site_csv(f, sites);
        }
    };

    try {
        const WindowReconstruction r = reconstruct_window(rd, w.lo, w.hi, o.config.solver_options());
        write_csv(r.sites);
        emit_json(o.output, to_json(r.q));
        if (!o.plot.empty()) {
            auto f = open_out(o.plot + "_q.dat");
            write_amplitude_dat(f, r.q);
        }
        int worst = 0;
        double res = 0.0;
        for (const auto& site : r.sites) {
            worst = std::max(worst, site.iterations);
            res = std::max(res, site.residual);
        }
        summary(o) << "sites " << r.sites.size() << "  max iterations " << worst << "  max residual " << res
                   << "  sup|r| " << rd.sup_r << '\n';
        return ok;
    } catch (const ReconstructionError& e) {
        write_csv(e.sites());
        print_sites_failed(e);
        return no_convergence;
    }
}

struct Check {
    std::string name;
    double value;
    double limit;
    bool pass() const { return value <= limit; }
};

int cmd_roundtrip(const Options& o)
{
    Potential q;
    if (o.random) {
        if (o.sites < 1)
            throw ConfigError("--sites must be positive");
        q = random_potential(-o.sites / 2, o.sites, o.radius, o.config.seed);
    } else {
        q = load_potential(o);
    }
    // Explicit --window, else the support, else the default window.
    const SiteWindow win = !o.window.empty() || q.empty() ? o.config.window : SiteWindow{q.n_min(), q.n_max()};

    const GridPtr grid = make_grid(o.config.grid_n);
    auto t0 = Clock::now();
    const ScatteringData s = compute_scattering(q, grid);
    const double t_scatter = seconds_since(t0);
    t0 = Clock::now();
    const ReflectionData rd = prepare_reflection(s.r);
    const double t_prepare = seconds_since(t0);

    WindowReconstruction r;
    t0 = Clock::now();
    try {
        r = reconstruct_window(rd, win.lo, win.hi, o.config.solver_options());
    } catch (const ReconstructionError& e) {
        print_sites_failed(e);
        return no_convergence;
    }
    const double t_reconstruct = seconds_since(t0);

    const double qn = l2_norm(q);
    const double err = qn > 0 ? l2_distance(r.q, q) / qn : l2_distance(r.q, q);

    double det_err = 0, jump_err = 0, mod_err = 0;
    for (std::size_t j = 0; j < grid->size(); ++j) {
        det_err = std::max(det_err, std::abs(std::norm(s.a[j]) - std::norm(s.b[j]) - s.c_inf));
        const double one_minus = 1.0 - std::norm(s.r[j]);
        jump_err = std::max(jump_err, std::abs(rd.delta_plus[j] - rd.delta_minus[j] * one_minus));
        mod_err = std::max(mod_err, std::abs(std::abs(rd.delta_plus[j] * rd.delta_minus[j]) - rd.c_inf));
    }
    const double sup_r = rd.sup_r;
    const double norm_err = sup_r > 0 ? std::abs(sup_norm(rd.r_tilde) - sup_r) / sup_r : sup_norm(rd.r_tilde);
    int winding = 0;
    double winding_err = 0.0;
    try {
        winding = winding_number(s.a);
    } catch (const InvariantViolation&) {
        winding_err = 1.0;
    }

    const std::vector<Check> checks{
        {"round trip relative l2 error", err, 1e-8},
        {"|a|^2 - |b|^2 = c_inf", det_err, 1e-12},
        {"product c_inf = exp(rho^(0))", std::abs(s.c_inf - rd.c_inf), 1e-10},
        {"winding number of a", winding_err + std::abs(winding), 0.0},
        {"delta+ = delta- (1 - |r|^2)", jump_err, 1e-12},
        {"|delta+ delta-| = c_inf", mod_err, 1e-12},
        {"sup|r_tilde| = sup|r| (relative)", norm_err, 1e-12},
    };

    std::cout << std::setprecision(6) << std::scientific;
    std::cout << "sites " << q.size() << "  window [" << win.lo << ", " << win.hi << "]  N " << grid->size()
              << "  sup|q| " << sup_norm(q) << "  sup|r| " << sup_r << '\n';
    std::cout << "relative l2 error  " << err << '\n';
    std::cout << "timings [s]  scatter " << t_scatter << "  prepare " << t_prepare << "  reconstruct "
              << t_reconstruct << '\n';
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass() ? "PASS  " : "FAIL  ") << std::left << std::setw(36) << c.name << c.value
                  << "  (limit " << c.limit << ")\n";
        all = all && c.pass();
    }
    if (!o.output.empty())
        write_json_file(o.output, to_json(r.q));
    if (!o.csv.empty()) {
        auto f = open_out(o.csv);
        write_site_csv(f, r.sites);
    }
    return all ? ok : roundtrip_failed;
}

int cmd_evolve(const Options& o)
{
    const Potential q0 = load_potential(o);
    if (o.method != "ist" && o.method != "rk4" && o.method != "both")
        throw ConfigError("--method must be ist, rk4 or both");
    const bool use_ist = o.method != "rk4";
    const bool use_rk4 = o.method != "ist";

    std::optional<std::ofstream> series;
    if (!o.series.empty()) {
        series = open_out(o.series);
        *series << "t,method,n,re_q,im_q,abs_q\n" << std::setprecision(17);
    }
    auto record = [&](double t, const char* method, const Potential& q) {
        if (!series)
            return;
        for (int n = q.n_min(); n <= q.n_max(); ++n)
            *series << t << ',' << method << ',' << n << ',' << q(n).real() << ',' << q(n).imag() << ','
                    << std::abs(q(n)) << '\n';
    };

    EvolutionReport rep;
    for (double t : o.times) {
        const SiteWindow win = o.window.empty() ? default_window(q0, t) : o.config.window;
        if (use_ist && use_rk4) {
            rep = oracle_compare(q0, t, o.config.dt, win, o.config.grid_n, o.config.solver_options(), o.buffer);
        } else {
            rep = EvolutionReport{};
            rep.t = t;
            if (use_ist) {
                IstResult ist = ist_evolve(q0, t, win, o.config.grid_n, o.config.solver_options());
                rep.c_inf_drift = std::abs(c_total(ist.q) - c_total(q0));
                rep.ist_edge_amplitude = ist.edge_amplitude;
                rep.warnings = ist.warnings;
                rep.q_ist = std::move(ist.q);
            } else {
                OracleResult rk = rk4_evolve(q0, t, o.config.dt, o.buffer < 0 ? default_buffer(t) : o.buffer);
                rep.rk4_log_c_drift = rk.log_c_drift;
                rep.rk4_edge_amplitude = rk.edge_amplitude;
                rep.oracle_window_breach = rk.edge_growth > kEdgeMassThreshold;
                rep.q_rk4 = std::move(rk.q);
            }
        }
        if (rep.q_ist)
            record(t, "ist", *rep.q_ist);
        if (rep.q_rk4)
            record(t, "rk4", *rep.q_rk4);
        for (const auto& w : rep.warnings)
            std::cerr << "alist: warning: " << w << '\n';
    }

    emit_json(o.output, to_json(rep));
    std::ostream& os = summary(o);
    os << std::setprecision(6) << std::scientific << "t " << rep.t;
    if (rep.sup_error)
        os << "  sup_error " << *rep.sup_error << "  l2_error " << *rep.l2_error;
    if (rep.c_inf_drift)
        os << "  c_inf_drift " << *rep.c_inf_drift;
    if (rep.rk4_log_c_drift)
        os << "  rk4_log_c_drift " << *rep.rk4_log_c_drift;
    os << '\n';

    if (!o.plot.empty()) {
        if (rep.q_ist) {
            auto f = open_out(o.plot + "_q_ist.dat");
            write_amplitude_dat(f, *rep.q_ist);
        }
        if (rep.q_rk4) {
            auto f = open_out(o.plot + "_q_rk4.dat");
            write_amplitude_dat(f, *rep.q_rk4);
        }
        const ScatteringData s = compute_scattering(q0, make_grid(o.config.grid_n));
        auto f = open_out(o.plot + "_r.dat");
        write_reflection_dat(f, evolve_reflection(s.r, rep.t));
    }
    return rep.oracle_window_breach ? window_breach : ok;
}

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--input", o.input, "Input JSON file");
    cmd->add_option("--output", o.output, "Output JSON file (default stdout)");
    cmd->add_option("--grid", o.config.grid_n, "Circle grid size N (even, >= 64)")->capture_default_str();
    cmd->add_option("--tol", o.config.tol, "Solver tolerance")->capture_default_str();
    cmd->add_option("--max-iter", o.config.max_iter, "Solver iteration cap")->capture_default_str();
    cmd->add_option("--window", o.window, "Site window LO HI")->expected(2);
    cmd->add_option("--solver", o.solver, "cg or neumann")->check(CLI::IsMember({"cg", "neumann"}))
        ->capture_default_str();
    cmd->add_option("--seed", o.config.seed, "Seed for randomized inputs")->capture_default_str();
    cmd->add_option("--plot", o.plot, "Prefix for gnuplot .dat files");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Direct and inverse scattering for the defocusing Ablowitz-Ladik lattice"};
    app.require_subcommand(1);
    Options o;

    auto* scatter = app.add_subcommand("scatter", "Potential JSON -> scattering data JSON");
    add_common(scatter, o);

    auto* reconstruct = app.add_subcommand("reconstruct", "Scattering data JSON -> potential JSON (+ CSV)");
    add_common(reconstruct, o);
    reconstruct->add_option("--csv", o.csv, "Per-site CSV (n, re_q, im_q, residual, iterations)");

    auto* roundtrip = app.add_subcommand("roundtrip", "Scatter, reconstruct and check invariants");
    add_common(roundtrip, o);
    roundtrip->add_option("--csv", o.csv, "Per-site CSV");
    roundtrip->add_flag("--random", o.random, "Use a random potential instead of --input");
    roundtrip->add_option("--sites", o.sites, "Random potential size, placed on [-S/2, S - S/2)")->capture_default_str();
    roundtrip->add_option("--radius", o.radius, "Random entries uniform in |q| < radius")->capture_default_str();

    auto* evolve = app.add_subcommand("evolve", "Evolve a potential to time t");
    add_common(evolve, o);
    evolve->add_option("--t", o.times, "Output time(s); the report is for the last one")->capture_default_str();
    evolve->add_option("--dt", o.config.dt, "RK4 step")->capture_default_str();
    evolve->add_option("--method", o.method, "ist, rk4 or both")->check(CLI::IsMember({"ist", "rk4", "both"}))
        ->capture_default_str();
    evolve->add_option("--series", o.series, "CSV time series over all --t values");
    evolve->add_option("--buffer", o.buffer, "RK4 zero padding in sites (default ceil(64 t))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : bad_input;
    }

    try {
        if (!o.window.empty())
            o.config.window = {o.window[0], o.window[1]};
        o.config.solver = o.solver == "neumann" ? SolverMethod::neumann : SolverMethod::conjugate_gradient;
        o.config.validate();

        if (scatter->parsed())
            return cmd_scatter(o);
        if (reconstruct->parsed())
            return cmd_reconstruct(o);
        if (roundtrip->parsed())
            return cmd_roundtrip(o);
        return cmd_evolve(o);
    } catch (const SchemaError& e) {
        std::cerr << "alist: schema error: " << e.what() << '\n';
        return bad_input;
    } catch (const ConfigError& e) {
        std::cerr << "alist: invalid configuration: " << e.what() << '\n';
        return bad_input;
    } catch (const InvariantViolation& e) {
        std::cerr << "alist: invariant violation: " << e.what() << '\n';
        return invariant;
    } catch (const ReconstructionError& e) {
        print_sites_failed(e);
        return no_convergence;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "alist: " << e.what() << '\n';
        return no_convergence;
    } catch (const InvalidArgument& e) {
        std::cerr << "alist: invalid argument: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "alist: " << e.what() << '\n';
        return unexpected;
    }
}
