#include "qst/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qst {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double max_coupling(const ModelParams& p) {
    return std::max(std::max(p.g_eg_1, p.g_eg_2), std::max(p.g_fg_1, p.g_fg_2));
}

// dt must give at least 20 steps per period of the fastest oscillation.
void check_step_size(const ModelParams& p, const IntegratorConfig& cfg) {
    const double omega_max = std::max(
        std::max(p.Delta, std::abs(p.delta)),
        std::max(std::sqrt(2.0) * max_coupling(p), p.Omega));
    if (omega_max > 0.0 && cfg.dt > (two_pi / omega_max) / 20.0) {
        throw std::invalid_argument(
            "IntegratorConfig: dt = " + std::to_string(cfg.dt) +
            " ns is too coarse for the fastest frequency " + std::to_string(omega_max) +
            " rad/ns; need dt <= " + std::to_string((two_pi / omega_max) / 20.0));
    }
}

}  // namespace

void InputState::validate() const {
    const double norm2 = std::norm(alpha) + std::norm(beta) + std::norm(gamma);
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("InputState: |alpha|^2 + |beta|^2 + |gamma|^2 = " +
                                    std::to_string(norm2) + ", must be 1 within 1e-10");
    }
}

StageDurations stage_durations(double g, double Omega) {
    if (!(g > 0.0) || !(Omega > 0.0)) {
        throw std::invalid_argument("stage_durations: g and Omega must be > 0");
    }
    return {std::numbers::pi / (std::sqrt(2.0) * g), std::numbers::pi / Omega};
}

StateVector prepare_initial(const InputState& s, const SpaceLayout& layout) {
    s.validate();
    StateVector psi = StateVector::Zero(layout.total_dim());
    psi(layout.flat_index(Level::g, 0, 0, Level::g)) = s.alpha;
    psi(layout.flat_index(Level::e, 0, 0, Level::g)) = s.beta;
    psi(layout.flat_index(Level::f, 0, 0, Level::g)) = s.gamma;
    return psi;
}

StateVector ideal_target(const InputState& s, const SpaceLayout& layout) {
    s.validate();
    StateVector psi = StateVector::Zero(layout.total_dim());
    psi(layout.flat_index(Level::g, 0, 0, Level::g)) = s.alpha;
    psi(layout.flat_index(Level::g, 0, 0, Level::e)) = s.beta;
    psi(layout.flat_index(Level::g, 0, 0, Level::f)) = s.gamma;
    return psi;
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
    if (rho.rows() != rho.cols() || rho.rows() != target.size()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const Complex overlap = target.dot(rho * target);
    if (std::abs(overlap.imag()) >= 1e-10) {
        throw std::runtime_error("fidelity: overlap has imaginary part " +
                                 std::to_string(overlap.imag()));
    }
    return std::sqrt(std::max(0.0, overlap.real()));
}

TransferResult run_transfer(const ModelParams& p, const InputState& s,
                            const IntegratorConfig& cfg, const TransferOptions& options) {
    p.validate();
    s.validate();
    check_step_size(p, cfg);

    const StageDurations stages = stage_durations(p.g_eg_1, p.Omega);
    const double t1 = stages.t1;
    const double t2 = stages.t2;

    const StateVector psi0 = prepare_initial(s, p.layout);
    const StateVector target = ideal_target(s, p.layout);

    TransferResult result;
    result.t1 = t1;
    result.t2 = t2;
    result.t_total = t1 + t2;

    if (options.ideal) {
        const Operator h1 = ideal_stage1_hamiltonian(p);
        ModelParams no_crosstalk = p;
        no_crosstalk.g12 = 0.0;
        const Operator h2 = stage2_hamiltonian(no_crosstalk, 0.0);

        PropagationStats s1, s2;
        const StateVector mid = evolve_schrodinger(
            psi0, [&](double) { return h1; }, 0.0, t1, cfg, &s1);
        const StateVector fin = evolve_schrodinger(
            mid, [&](double) { return h2; }, t1, t1 + t2, cfg, &s2);

        result.rho_final = fin * fin.adjoint();
        result.fidelity = std::abs(target.dot(fin));
        result.steps = s1.steps + s2.steps;
        result.max_trace_drift = std::max(s1.max_drift, s2.max_drift);
        result.min_eigenvalue = min_eigenvalue_hermitian(result.rho_final);
    } else {
        const CollapseSet collapse = collapse_operators(p);
        const Stage1Hamiltonian h1(p);
        const Stage2Hamiltonian h2(p);
        const double t2_offset = options.reset_clock ? t1 : 0.0;

        DensityMatrix rho = psi0 * psi0.adjoint();
        PropagationStats s1, s2;
        rho = evolve_master(rho, [&](double t) { return h1(t); }, collapse, 0.0, t1, cfg, &s1,
                            options.observer);
        rho = evolve_master(rho, [&](double t) { return h2(t - t2_offset); }, collapse,
                            t1, t1 + t2, cfg, &s2, options.observer);

        result.rho_final = std::move(rho);
        result.fidelity = fidelity(result.rho_final, target);
        result.steps = s1.steps + s2.steps;
        result.max_trace_drift = std::max(s1.max_drift, s2.max_drift);
        result.min_eigenvalue = s2.min_eigenvalue;
    }

    if (result.fidelity < 0.0 || result.fidelity > 1.0 + 1e-9) {
        throw std::runtime_error("run_transfer: fidelity " + std::to_string(result.fidelity) +
                                 " outside [0, 1 + 1e-9]");
    }
    return result;
}

}  // namespace qst
