#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qst/protocol.hpp"

namespace qst {

/// Grid-scan results: one numeric row per grid point, in row-major order of
/// the swept grid.
struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Worst-case integrator bookkeeping across every run of a sweep.
struct SweepDiagnostics {
    double max_trace_drift = 0.0;
    double min_eigenvalue = 1.0;
};

/// Fidelity versus coupling strength and crosstalk ratio.  For each
/// (g, ratio): all four couplings are set to g, g12 = ratio * g, the stage
/// durations re-derive from g, and one transfer runs.  Requires delta = 0 in
/// base.  Columns: g_over_2pi_MHz, g12_ratio, fidelity.
SweepTable sweep_coupling(const std::vector<double>& g_grid,
                          const std::vector<double>& g12_ratios,
                          const ModelParams& base, const InputState& s,
                          const IntegratorConfig& cfg,
                          SweepDiagnostics* diag = nullptr, unsigned workers = 0);

/// Fidelity versus detuning and coupling asymmetry c = g_fg / g_eg, with
/// g_eg fixed at base.g_eg_1 and g12 taken from base.  Columns:
/// delta_over_2pi_MHz, c, fidelity.
SweepTable sweep_detuning_asymmetry(const std::vector<double>& delta_grid,
                                    const std::vector<double>& c_grid,
                                    const ModelParams& base, const InputState& s,
                                    const IntegratorConfig& cfg,
                                    SweepDiagnostics* diag = nullptr, unsigned workers = 0);

/// Resonator quality factors Q_j = omega_cj / kappa_j.  Throws for zero kappa.
std::pair<double, double> quality_factors(const ModelParams& p);

/// Write a table as CSV: header row, '.' decimal separator, fidelity column
/// with 6 decimal places, newline after the last row.  Byte-deterministic for
/// identical input.
void write_csv(const SweepTable& table, const std::string& path);

}  // namespace qst
