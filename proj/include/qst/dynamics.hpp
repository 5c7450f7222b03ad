#pragma once

#include <functional>

#include "qst/hilbert.hpp"
#include "qst/model.hpp"

namespace qst {

/// Fixed-step integration settings.  The step must resolve the fastest
/// angular frequency in play: dt <= (2*pi/omega_max)/20, checked where the
/// model parameters are known (run_transfer).
struct IntegratorConfig {
    double dt = 1e-3;              ///< step size, ns
    int refine_factor = 2;         ///< step divisor between convergence levels
    double convergence_tol = 1e-6; ///< |dF| threshold between refinements
};

/// Per-propagation bookkeeping.  max_drift is the largest |tr(rho) - 1|
/// (master equation) or |norm - 1| (Schroedinger) seen at any accepted step;
/// min_eigenvalue is evaluated on the final state only.
struct PropagationStats {
    long long steps = 0;
    double max_drift = 0.0;
    double min_eigenvalue = 0.0;
};

/// Time-dependent Hamiltonian, evaluated at absolute protocol time (ns).
using HamiltonianFn = std::function<Operator(double)>;

/// Called with (t, rho) at t0 and after every accepted step.
using MasterObserver = std::function<void(double, const DensityMatrix&)>;

/// Right-hand side of the Lindblad master equation,
///   -i[h, rho] + sum_C (C rho C^dag - {C^dag C, rho}/2).
/// Straightforward dense evaluation; the propagator below uses an equivalent
/// sparsity-aware path (their agreement is tested).
DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Operator& h, const CollapseSet& c);

/// Propagate the master equation from t0 to t1 with classical RK4 at fixed
/// step cfg.dt; the final partial step is shortened to land exactly on t1.
/// The result is re-Hermitized once at the end.  Throws std::runtime_error
/// (suggesting a smaller dt) if the trace drifts by more than 1e-6 or the
/// final state has an eigenvalue below -1e-6.
DensityMatrix evolve_master(const DensityMatrix& rho0, const HamiltonianFn& h_of_t,
                            const CollapseSet& c, double t0, double t1,
                            const IntegratorConfig& cfg,
                            PropagationStats* stats = nullptr,
                            const MasterObserver& observer = {});

/// Propagate d psi/dt = -i H(t) psi with the same stepping scheme; the result
/// is renormalized once at the end.  Throws if the norm drifts by more than 1e-6.
StateVector evolve_schrodinger(const StateVector& psi0, const HamiltonianFn& h_of_t,
                               double t0, double t1, const IntegratorConfig& cfg,
                               PropagationStats* stats = nullptr);

/// Closed-form stage-1 evolution for symmetric couplings g_eg = g_fg = g.
/// Valid only for states in the span of {|g00g>, |e00g>, |g10g>, |g00e>,
/// |f00g>, |g01g>, |g00f>}; anything outside raises std::invalid_argument.
/// Each excitation branch evolves on its three-state chain with frequency
/// sqrt(2) g; |g00g> is stationary.
StateVector closed_form_stage1(const StateVector& psi0, double g, double t,
                               const SpaceLayout& layout);

/// Closed-form stage-2 rotation on qutrit 2's {e, f} subspace, applied
/// factor-wise to any state:
///   |e>_2 -> cos(Omega t)|e>_2 - i sin(Omega t)|f>_2   (and e <-> f).
StateVector closed_form_stage2(const StateVector& psi0, double Omega, double t);

}  // namespace qst
