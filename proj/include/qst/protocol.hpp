#pragma once

#include "qst/dynamics.hpp"
#include "qst/hilbert.hpp"
#include "qst/model.hpp"

namespace qst {

/// Amplitudes of the state to transfer, (alpha|g> + beta|e> + gamma|f>) on
/// qutrit 1.  Must be normalized within 1e-10.
struct InputState {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    Complex gamma{0.0, 0.0};

    void validate() const;
};

struct StageDurations {
    double t1;  ///< swap through the resonators, ns
    double t2;  ///< pi rotation on qutrit 2, ns
    double total() const { return t1 + t2; }
};

/// t1 = pi / (sqrt(2) g), t2 = pi / Omega.  Throws for nonpositive rates.
StageDurations stage_durations(double g, double Omega);

/// alpha|g,0,0,g> + beta|e,0,0,g> + gamma|f,0,0,g>.
StateVector prepare_initial(const InputState& s, const SpaceLayout& layout);

/// alpha|g,0,0,g> + beta|g,0,0,e> + gamma|g,0,0,f>.
StateVector ideal_target(const InputState& s, const SpaceLayout& layout);

/// F = sqrt(<target| rho |target>), clamped below at 0.  Raises an
/// internal-consistency error if the overlap has imaginary part >= 1e-10.
double fidelity(const DensityMatrix& rho, const StateVector& target);

struct TransferOptions {
    /// Resonant couplings, no crosstalk, no dissipation; pure-state path.
    bool ideal = false;
    /// Restart the crosstalk phase clock at the stage-2 boundary instead of
    /// continuing protocol time (the resonator frequencies are fixed for the
    /// whole run, so the default is the continuous clock).
    bool reset_clock = false;
    /// Forwarded to evolve_master on the lossy path (ignored when ideal).
    MasterObserver observer;
};

struct TransferResult {
    DensityMatrix rho_final;
    double fidelity = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double t_total = 0.0;
    long long steps = 0;
    double max_trace_drift = 0.0;
    double min_eigenvalue = 0.0;
};

/// Run the full two-stage transfer: stage-1 swap for t1, then the stage-2
/// rotation for t2, under either the ideal Hamiltonians (options.ideal) or
/// the detuned/crosstalk Hamiltonians with all collapse channels.  The
/// nominal coupling for the stage-1 duration is p.g_eg_1.
TransferResult run_transfer(const ModelParams& p, const InputState& s,
                            const IntegratorConfig& cfg, const TransferOptions& options = {});

}  // namespace qst
