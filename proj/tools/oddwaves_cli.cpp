#include "oddwaves/ck_series.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/runner.hpp"
#include "oddwaves/selftest.hpp"
#include "oddwaves/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_integration = 3;
constexpr int exit_io = 4;

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

int cmd_run(const std::string& config_path, std::string out_dir) {
    const oddwaves::RunConfig cfg = oddwaves::load_config(config_path);
    if (out_dir.empty()) out_dir = (oddwaves::output_root() / cfg.run_id).string();
    const oddwaves::RunManifest man = oddwaves::run_simulation(cfg, out_dir);
    std::cout << "run " << cfg.run_id << ": " << man.termination << " at t="
              << man.final_time << " (" << man.accepted_steps << " steps, "
              << man.wall_seconds << " s) -> " << out_dir << "\n";
    return man.termination == "completed" ? exit_ok : exit_integration;
}

int cmd_sweep(const std::string& config_path, std::string out_dir,
              const std::vector<std::string>& axis_specs, std::size_t cap) {
    const oddwaves::RunConfig base = oddwaves::load_config(config_path);
    std::vector<oddwaves::SweepAxis> axes;
    for (const auto& spec : axis_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw oddwaves::config_error("axis must be name=v1,v2,... : " + spec);
        axes.push_back({spec.substr(0, eq), parse_values(spec.substr(eq + 1))});
    }
    if (out_dir.empty())
        out_dir = (oddwaves::output_root() / (base.run_id + "_sweep")).string();
    const oddwaves::SweepIndex idx = oddwaves::run_sweep(base, axes, out_dir, cap);
    std::size_t bad = 0;
    for (const auto& pt : idx.points) {
        std::cout << pt.dir << ": " << pt.termination << "\n";
        if (pt.termination.rfind("error", 0) == 0) ++bad;
    }
    std::cout << "sweep: " << idx.points.size() << " points -> " << out_dir << "\n";
    return bad == 0 ? exit_ok : exit_integration;
}

int cmd_plot(const std::string& run_dir) {
    for (const auto& p : oddwaves::emit_plots(run_dir))
        std::cout << "wrote " << p.string() << "\n";
    return exit_ok;
}

// Series-vs-RK45 cross-validation of the bidirectional solver.
int cmd_ck_compare(const std::string& config_path, int orders,
                   double time_fraction) {
    oddwaves::RunConfig cfg = oddwaves::load_config(config_path);
    cfg.params.model = oddwaves::ModelKind::BidirectionalFull;
    cfg.params.mu = 0.0;
    const oddwaves::FourierGrid grid = cfg.grid();
    const oddwaves::SpectralField f0 = cfg.build_initial(grid);
    const oddwaves::SpectralField f1 = cfg.build_initial_t(grid);

    const double tstar = oddwaves::existence_time(f0, f1, cfg.params);
    if (!std::isfinite(tstar)) {
        std::cout << "zero data: T* = +inf, nothing to compare\n";
        return exit_ok;
    }
    const double t = time_fraction * tstar;
    std::cout << "T* = " << tstar << ", comparing at t = " << t << " with L = "
              << orders << "\n";

    const oddwaves::SeriesSolution sol =
        oddwaves::ck_assemble(f0, f1, t, orders, cfg.params);

    oddwaves::StepControl ctrl = cfg.step;
    ctrl.rel_tol = std::min(ctrl.rel_tol, 1e-10);
    ctrl.abs_tol = std::min(ctrl.abs_tol, 1e-12);
    const auto rhs = oddwaves::lift_second_order(grid, cfg.params);
    const auto res = oddwaves::integrate(
        rhs, oddwaves::pack_state({f0, f1}), 0.0, t, ctrl);
    if (res.reason != oddwaves::StopReason::Completed) {
        std::cerr << "reference integration failed\n";
        return exit_integration;
    }
    const oddwaves::WaveState ref = oddwaves::unpack_state(grid, res.y);

    const auto a = sol.state.f.to_physical();
    const auto b = ref.f.to_physical();
    double diff = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        diff = std::max(diff, std::abs(a[j] - b[j]));
        scale = std::max(scale, std::abs(b[j]));
    }
    std::cout << "max |series - rk45| = " << diff << " (field scale " << scale
              << ")\n";
    std::cout << "order  B_l(t)        C_l t^l       ok\n";
    bool ledger_ok = true;
    for (const auto& e : sol.ledger) {
        const bool ok = e.b_value <= e.catalan_bound * (1.0 + 1e-9) ||
                        e.b_value < 1e-300;
        ledger_ok = ledger_ok && ok;
        std::printf("%5d  %-12.5g  %-12.5g  %s\n", e.order, e.b_value,
                    e.catalan_bound, ok ? "yes" : "NO");
    }
    std::cout << (ledger_ok ? "majorant ledger: within the Catalan bound\n"
                            : "majorant ledger: BOUND VIOLATED\n");
    return ledger_ok ? exit_ok : exit_integration;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oddwaves: pseudospectral models of surface waves with odd "
                 "viscosity"};
    app.set_version_flag("--version", oddwaves::version);
    app.require_subcommand(1);

    std::string config_path, out_dir, run_dir;
    std::vector<std::string> axis_specs;
    std::size_t cap = 256;
    int orders = 12;
    double time_fraction = 0.05;

    auto* run = app.add_subcommand("run", "execute one simulation");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("-o,--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "cartesian parameter sweep");
    sweep->add_option("config", config_path, "JSON base config")->required();
    sweep->add_option("--axis", axis_specs,
                      "axis as name=v1,v2,... (epsilon, alpha_o, beta, mu, "
                      "amplitude)");
    sweep->add_option("-o,--out", out_dir, "output directory");
    sweep->add_option("--cap", cap, "maximum number of grid points");

    auto* plot = app.add_subcommand("plot", "render SVG plots for a run");
    plot->add_option("run_dir", run_dir, "run directory")->required();

    auto* ck = app.add_subcommand(
        "ck-compare", "power-series vs RK45 cross-validation report");
    ck->add_option("config", config_path, "JSON config file")->required();
    ck->add_option("--orders", orders, "series truncation order");
    ck->add_option("--time-fraction", time_fraction,
                   "evaluation time as a fraction of T*");

    auto* self = app.add_subcommand("selftest", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*sweep) return cmd_sweep(config_path, out_dir, axis_specs, cap);
        if (*plot) return cmd_plot(run_dir);
        if (*ck) return cmd_ck_compare(config_path, orders, time_fraction);
        if (*self) return oddwaves::run_selftest(std::cout) == 0 ? exit_ok : 1;
    } catch (const oddwaves::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const oddwaves::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_config;
    } catch (const oddwaves::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_integration;
    }
    return exit_ok;
}
