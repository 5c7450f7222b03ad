#include "qst/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qst {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double rad_per_ns_to_mhz(double w) {
    return w / (two_pi * 1e-3);
}

// Evaluate body(i) for i in [0, n) on a bounded pool.  Each index writes only
// its own output slot, so the assembled result is independent of scheduling.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
    if (n == 0) {
        return;
    }
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(run);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

void merge_diagnostics(SweepDiagnostics* diag, const std::vector<TransferResult>& results) {
    if (!diag) {
        return;
    }
    for (const TransferResult& r : results) {
        diag->max_trace_drift = std::max(diag->max_trace_drift, r.max_trace_drift);
        diag->min_eigenvalue = std::min(diag->min_eigenvalue, r.min_eigenvalue);
    }
}

}  // namespace

SweepTable sweep_coupling(const std::vector<double>& g_grid,
                          const std::vector<double>& g12_ratios,
                          const ModelParams& base, const InputState& s,
                          const IntegratorConfig& cfg,
                          SweepDiagnostics* diag, unsigned workers) {
    if (g_grid.empty() || g12_ratios.empty()) {
        throw std::invalid_argument("sweep_coupling: empty grid");
    }
    if (base.delta != 0.0) {
        throw std::invalid_argument("sweep_coupling: base detuning must be zero");
    }

    const std::size_t n = g_grid.size() * g12_ratios.size();
    std::vector<TransferResult> results(n);
    parallel_for(n, workers, [&](std::size_t i) {
        const double g = g_grid[i / g12_ratios.size()];
        const double ratio = g12_ratios[i % g12_ratios.size()];
        ModelParams p = base;
        p.g_eg_1 = p.g_eg_2 = p.g_fg_1 = p.g_fg_2 = g;
        p.g12 = ratio * g;
        try {
            results[i] = run_transfer(p, s, cfg);
        } catch (const std::exception& ex) {
            throw std::runtime_error("sweep_coupling failed at g/2pi = " +
                                     std::to_string(rad_per_ns_to_mhz(g)) + " MHz, ratio = " +
                                     std::to_string(ratio) + ": " + ex.what());
        }
    });

    SweepTable table;
    table.header = {"g_over_2pi_MHz", "g12_ratio", "fidelity"};
    table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = g_grid[i / g12_ratios.size()];
        const double ratio = g12_ratios[i % g12_ratios.size()];
        table.rows.push_back({rad_per_ns_to_mhz(g), ratio, results[i].fidelity});
    }
    merge_diagnostics(diag, results);
    return table;
}

SweepTable sweep_detuning_asymmetry(const std::vector<double>& delta_grid,
                                    const std::vector<double>& c_grid,
                                    const ModelParams& base, const InputState& s,
                                    const IntegratorConfig& cfg,
                                    SweepDiagnostics* diag, unsigned workers) {
    if (delta_grid.empty() || c_grid.empty()) {
        throw std::invalid_argument("sweep_detuning_asymmetry: empty grid");
    }

    const double g = base.g_eg_1;
    const std::size_t n = delta_grid.size() * c_grid.size();
    std::vector<TransferResult> results(n);
    parallel_for(n, workers, [&](std::size_t i) {
        const double delta = delta_grid[i / c_grid.size()];
        const double c = c_grid[i % c_grid.size()];
        ModelParams p = base;
        p.g_eg_1 = p.g_eg_2 = g;
        p.g_fg_1 = p.g_fg_2 = c * g;
        p.delta = delta;
        try {
            results[i] = run_transfer(p, s, cfg);
        } catch (const std::exception& ex) {
            throw std::runtime_error("sweep_detuning_asymmetry failed at delta/2pi = " +
                                     std::to_string(rad_per_ns_to_mhz(delta)) + " MHz, c = " +
                                     std::to_string(c) + ": " + ex.what());
        }
    });

    SweepTable table;
    table.header = {"delta_over_2pi_MHz", "c", "fidelity"};
    table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = delta_grid[i / c_grid.size()];
        const double c = c_grid[i % c_grid.size()];
        table.rows.push_back({rad_per_ns_to_mhz(delta), c, results[i].fidelity});
    }
    merge_diagnostics(diag, results);
    return table;
}

std::pair<double, double> quality_factors(const ModelParams& p) {
    if (!(p.kappa_1 > 0.0) || !(p.kappa_2 > 0.0)) {
        throw std::invalid_argument("quality_factors: kappa must be > 0");
    }
    return {p.omega_c1 / p.kappa_1, p.omega_c2 / p.kappa_2};
}

void write_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_csv: cannot open " + path);
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i == 0 ? "" : ",") << table.header[i];
    }
    out << '\n';

    char buf[64];
    for (const std::vector<double>& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            const bool is_fidelity =
                i < table.header.size() && table.header[i] == "fidelity";
            std::snprintf(buf, sizeof(buf), is_fidelity ? "%.6f" : "%.10g", row[i]);
            out << (i == 0 ? "" : ",") << buf;
        }
        out << '\n';
    }
    out.flush();
    if (!out) {
        throw std::runtime_error("write_csv: write to " + path + " failed");
    }
}

}  // namespace qst
