// Command-line front end: single transfers, the two packaged fidelity sweeps,
// a step-size convergence ladder, and the built-in self-check suite.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qst/config.hpp"
#include "qst/protocol.hpp"
#include "qst/selfcheck.hpp"
#include "qst/sweep.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    double dt_override = 0.0;
    bool ideal = false;
    bool reset_clock = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON configuration file");
    cmd->add_option("--out", opt.out_path, "output path (overrides the config)");
    cmd->add_option("--dt", opt.dt_override, "integrator step in ns (overrides the config)");
    cmd->add_flag("--ideal", opt.ideal, "resonant couplings, no crosstalk, no dissipation");
    cmd->add_flag("--reset-clock", opt.reset_clock, "restart the crosstalk phase at stage 2");
}

// Precedence: flags > config file > defaults.
qst::RunConfig load_config(const CommonOptions& opt) {
    qst::RunConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = qst::parse_config(opt.config_path);
    }
    if (opt.dt_override > 0.0) {
        cfg.dt_ns = opt.dt_override;
    }
    if (opt.reset_clock) {
        cfg.reset_clock = true;
    }
    if (!opt.out_path.empty()) {
        cfg.out = opt.out_path;
    }
    cfg.validate();
    return cfg;
}

std::vector<double> linear_grid_mhz(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw std::runtime_error("sweep grid: need step > 0 and max >= min");
    }
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    for (int i = 0; i < n; ++i) {
        grid.push_back(qst::units::mhz_to_rad_per_ns(lo + i * step));
    }
    return grid;
}

int run_transfer_cmd(const CommonOptions& opt) {
    const qst::RunConfig cfg = load_config(opt);
    const qst::TransferOptions topt{.ideal = opt.ideal, .reset_clock = cfg.reset_clock};
    const qst::TransferResult r = qst::run_transfer(
        cfg.to_model_params(), cfg.input_state(), cfg.integrator_config(), topt);
    std::printf("t1 = %.6f ns\n", r.t1);
    std::printf("t2 = %.6f ns\n", r.t2);
    std::printf("t_total = %.6f ns\n", r.t_total);
    std::printf("fidelity = %.6f\n", r.fidelity);
    std::printf("steps = %lld\n", r.steps);
    std::printf("max_trace_drift = %.3e\n", r.max_trace_drift);
    std::printf("min_eigenvalue = %.3e\n", r.min_eigenvalue);
    return 0;
}

int run_sweep_g(const CommonOptions& opt, double g_min, double g_max, double g_step) {
    const qst::RunConfig cfg = load_config(opt);
    const std::vector<double> g_grid = linear_grid_mhz(g_min, g_max, g_step);
    const std::vector<double> ratios = {0.0, 0.1, 1.0};
    qst::ModelParams base = cfg.to_model_params();
    base.delta = 0.0;
    const qst::SweepTable table = qst::sweep_coupling(
        g_grid, ratios, base, cfg.input_state(), cfg.integrator_config());
    const std::string path = cfg.out.empty() ? "sweep_g.csv" : cfg.out;
    qst::write_csv(table, path);
    std::printf("wrote %zu rows to %s\n", table.rows.size(), path.c_str());
    return 0;
}

int run_sweep_delta_c(const CommonOptions& opt, double d_min, double d_max, double d_step,
                      double c_min, double c_max, double c_step) {
    const qst::RunConfig cfg = load_config(opt);
    const std::vector<double> delta_grid = linear_grid_mhz(d_min, d_max, d_step);
    if (!(c_step > 0.0) || c_max < c_min) {
        throw std::runtime_error("sweep grid: need c-step > 0 and c-max >= c-min");
    }
    std::vector<double> c_grid;
    const int n = static_cast<int>(std::floor((c_max - c_min) / c_step + 0.5)) + 1;
    for (int i = 0; i < n; ++i) {
        c_grid.push_back(c_min + i * c_step);
    }
    const qst::SweepTable table = qst::sweep_detuning_asymmetry(
        delta_grid, c_grid, cfg.to_model_params(), cfg.input_state(), cfg.integrator_config());
    const std::string path = cfg.out.empty() ? "sweep_delta_c.csv" : cfg.out;
    qst::write_csv(table, path);
    std::printf("wrote %zu rows to %s\n", table.rows.size(), path.c_str());
    return 0;
}

int run_convergence(const CommonOptions& opt, int levels) {
    const qst::RunConfig cfg = load_config(opt);
    const qst::TransferOptions topt{.ideal = opt.ideal, .reset_clock = cfg.reset_clock};
    const qst::ModelParams params = cfg.to_model_params();
    const qst::InputState state = cfg.input_state();
    qst::IntegratorConfig icfg = cfg.integrator_config();

    double previous = -1.0;
    double last_delta = 0.0;
    for (int level = 0; level <= levels; ++level) {
        const qst::TransferResult r = qst::run_transfer(params, state, icfg, topt);
        if (level == 0) {
            std::printf("level 0: dt = %.3e ns, F = %.9f\n", icfg.dt, r.fidelity);
        } else {
            last_delta = std::abs(r.fidelity - previous);
            std::printf("level %d: dt = %.3e ns, F = %.9f, |dF| = %.3e\n",
                        level, icfg.dt, r.fidelity, last_delta);
        }
        previous = r.fidelity;
        icfg.dt /= icfg.refine_factor;
    }
    if (levels > 0 && last_delta >= cfg.convergence_tol) {
        std::fprintf(stderr, "not converged: |dF| = %.3e >= tol %.3e\n",
                     last_delta, cfg.convergence_tol);
        return 1;
    }
    return 0;
}

int run_check() {
    const std::vector<qst::CheckResult> results = qst::run_self_checks();
    for (const qst::CheckResult& r : results) {
        std::printf("%s: %s (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
    }
    const bool ok = qst::all_passed(results);
    std::printf("%zu checks, %s\n", results.size(), ok ? "all passed" : "FAILURES");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qutrit state transfer through a pair of coupled resonators"};
    app.require_subcommand(1);

    CommonOptions transfer_opt, sweep_g_opt, sweep_dc_opt, conv_opt;
    double g_min = 10.0, g_max = 200.0, g_step = 10.0;
    double d_min = -80.0, d_max = 80.0, d_step = 10.0;
    double c_min = 0.95, c_max = 1.05, c_step = 0.01;
    int levels = 3;

    CLI::App* transfer = app.add_subcommand("transfer", "run one transfer and print fidelity");
    add_common_options(transfer, transfer_opt);

    CLI::App* sweep_g = app.add_subcommand(
        "sweep-g", "fidelity vs coupling for crosstalk ratios 0, 0.1 and 1 (CSV)");
    add_common_options(sweep_g, sweep_g_opt);
    sweep_g->add_option("--g-min", g_min, "lowest g/2pi in MHz");
    sweep_g->add_option("--g-max", g_max, "highest g/2pi in MHz");
    sweep_g->add_option("--g-step", g_step, "grid step in MHz");

    CLI::App* sweep_dc = app.add_subcommand(
        "sweep-delta-c", "fidelity vs detuning and coupling asymmetry (CSV)");
    add_common_options(sweep_dc, sweep_dc_opt);
    sweep_dc->add_option("--delta-min", d_min, "lowest delta/2pi in MHz");
    sweep_dc->add_option("--delta-max", d_max, "highest delta/2pi in MHz");
    sweep_dc->add_option("--delta-step", d_step, "grid step in MHz");
    sweep_dc->add_option("--c-min", c_min, "lowest coupling ratio c");
    sweep_dc->add_option("--c-max", c_max, "highest coupling ratio c");
    sweep_dc->add_option("--c-step", c_step, "ratio grid step");

    CLI::App* conv = app.add_subcommand("convergence", "step-halving fidelity ladder");
    add_common_options(conv, conv_opt);
    conv->add_option("--levels", levels, "number of refinement levels");

    CLI::App* check = app.add_subcommand("check", "run the built-in oracle/invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (transfer->parsed()) {
            return run_transfer_cmd(transfer_opt);
        }
        if (sweep_g->parsed()) {
            return run_sweep_g(sweep_g_opt, g_min, g_max, g_step);
        }
        if (sweep_dc->parsed()) {
            return run_sweep_delta_c(sweep_dc_opt, d_min, d_max, d_step, c_min, c_max, c_step);
        }
        if (conv->parsed()) {
            return run_convergence(conv_opt, levels);
        }
        if (check->parsed()) {
            return run_check();
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
