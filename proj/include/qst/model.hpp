#pragma once

#include <vector>

#include "qst/hilbert.hpp"

namespace qst {

/// Physical parameters of the two-qutrit / two-resonator system.
///
/// Internal units are rad/ns for couplings, detunings and angular frequencies
/// and 1/ns for decay and dephasing rates.  Conversions from the quoted
/// experimental conventions ("X/2pi in MHz", lifetimes in us) happen once at
/// the configuration boundary, never here.
struct ModelParams {
    double g_eg_1 = 0.0;  ///< qutrit 1 |g>-|e> coupling to resonator 1, rad/ns
    double g_eg_2 = 0.0;  ///< qutrit 2 |g>-|e> coupling to resonator 1, rad/ns
    double g_fg_1 = 0.0;  ///< qutrit 1 |g>-|f> coupling to resonator 2, rad/ns
    double g_fg_2 = 0.0;  ///< qutrit 2 |g>-|f> coupling to resonator 2, rad/ns
    double g12 = 0.0;     ///< inter-resonator crosstalk strength, rad/ns
    double delta = 0.0;   ///< common qutrit-resonator detuning, rad/ns

    double omega_c1 = 0.0;  ///< resonator 1 angular frequency, rad/ns
    double omega_c2 = 0.0;  ///< resonator 2 angular frequency, rad/ns
    double Delta = 0.0;     ///< omega_c2 - omega_c1, stored for checking

    double Omega = 0.0;  ///< Rabi frequency of the stage-2 drive, rad/ns

    double kappa_1 = 0.0;  ///< resonator 1 photon decay rate, 1/ns
    double kappa_2 = 0.0;  ///< resonator 2 photon decay rate, 1/ns

    // Qutrit rates, shared by both qutrits.
    double gamma_eg = 0.0;     ///< |e> -> |g> relaxation, 1/ns
    double gamma_fe = 0.0;     ///< |f> -> |e> relaxation, 1/ns
    double gamma_fg = 0.0;     ///< |f> -> |g> relaxation, 1/ns
    double gamma_phi_e = 0.0;  ///< |e> dephasing, 1/ns
    double gamma_phi_f = 0.0;  ///< |f> dephasing, 1/ns

    SpaceLayout layout{1};

    /// Throws std::invalid_argument if a rate or coupling is negative,
    /// non-finite, or Delta != omega_c2 - omega_c1.
    void validate() const;
};

/// Ordered collapse operators, each pre-scaled as sqrt(rate) * Lambda so the
/// dissipator L[C] = C rho C^dag - {C^dag C, rho}/2 enters with unit weight.
struct CollapseSet {
    std::vector<Operator> ops;
};

/// Stage-1 coupling Hamiltonian with detuning phases and inter-resonator
/// crosstalk,
///
///   H(t) = e^{i delta t} * [sum_j g_eg_j a1 s+_eg_j + sum_j g_fg_j a2 s+_fg_j]
///          + h.c. + g12 (e^{i Delta t} a1 a2^dag + h.c.),
///
/// evaluated at protocol time t.  The constant operator content is built once
/// at construction; operator() only applies the phases.
class Stage1Hamiltonian {
public:
    explicit Stage1Hamiltonian(const ModelParams& p);
    Operator operator()(double t) const;

private:
    double delta_;
    double Delta_;
    double g12_;
    Operator coupling_;   // sum of the a1/a2 raising terms, no phases
    Operator crosstalk_;  // a1 a2^dag
};

/// Stage-2 Hamiltonian: resonant |e>-|f> drive on qutrit 2 plus the same
/// crosstalk term as stage 1.  The qutrits are decoupled from the resonators.
class Stage2Hamiltonian {
public:
    explicit Stage2Hamiltonian(const ModelParams& p);
    Operator operator()(double t) const;

private:
    double Delta_;
    double g12_;
    Operator drive_;      // Omega (|e>_2<f| + h.c.), constant and Hermitian
    Operator crosstalk_;  // a1 a2^dag
};

/// Resonant stage-1 Hamiltonian (no detuning phases, no crosstalk).
Operator ideal_stage1_hamiltonian(const ModelParams& p);

/// Stage-1 Hamiltonian with detuning phases and crosstalk at time t.
Operator realistic_stage1_hamiltonian(const ModelParams& p, double t);

/// Stage-2 Hamiltonian (drive plus crosstalk) at time t.
Operator stage2_hamiltonian(const ModelParams& p, double t);

/// The twelve collapse operators in fixed order: resonator decays
/// (sqrt(kappa_j) a_j), qutrit relaxations for qutrit 1 then qutrit 2
/// (eg, fe, fg channels), dephasing projectors for qutrit 1 then qutrit 2
/// (ee, ff), all embedded in the composite space.
CollapseSet collapse_operators(const ModelParams& p);

/// Total excitation number N = a1^dag a1 + a2^dag a2 + sum_j (|e>_j<e| + |f>_j<f|).
/// Diagonal; every Hamiltonian in the model commutes with it.
Operator excitation_number(const SpaceLayout& layout);

}  // namespace qst
