#include "qst/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "qst/config.hpp"
#include "qst/dynamics.hpp"
#include "qst/hilbert.hpp"
#include "qst/model.hpp"
#include "qst/protocol.hpp"

namespace qst {

namespace {

struct Checker {
    std::vector<CheckResult> results;

    void check(const std::string& name, double error, double tol) {
        std::ostringstream detail;
        detail << "error " << error << " (tol " << tol << ")";
        results.push_back({name, error <= tol, detail.str()});
    }

    void check_flag(const std::string& name, bool ok, const std::string& detail) {
        results.push_back({name, ok, detail});
    }
};

double max_abs(const Operator& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
    Checker ck;
    const RunConfig cfg;
    const ModelParams p = cfg.to_model_params();
    const SpaceLayout& lay = p.layout;
    const InputState s = cfg.input_state();
    IntegratorConfig icfg = cfg.integrator_config();
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // Basis index bijection over all (q1, n1, n2, q2).
    {
        std::set<int> seen;
        for (int q1 = 0; q1 < 3; ++q1)
            for (int n1 = 0; n1 <= lay.n_max; ++n1)
                for (int n2 = 0; n2 <= lay.n_max; ++n2)
                    for (int q2 = 0; q2 < 3; ++q2)
                        seen.insert(lay.flat_index(static_cast<Level>(q1), n1, n2,
                                                   static_cast<Level>(q2)));
        const bool ok = static_cast<int>(seen.size()) == lay.total_dim() &&
                        *seen.begin() == 0 && *seen.rbegin() == lay.total_dim() - 1;
        ck.check_flag("basis index bijection", ok,
                      std::to_string(seen.size()) + " distinct indices");
    }

    // Hamiltonians Hermitian and commuting with N at random times.
    {
        const Operator n_op = excitation_number(lay);
        const Stage1Hamiltonian h1(p);
        const Stage2Hamiltonian h2(p);
        double herm = 0.0, comm = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double t = 10.0 * uni(rng);
            for (const Operator& h : {h1(t), h2(t), ideal_stage1_hamiltonian(p)}) {
                herm = std::max(herm, max_abs(h - h.adjoint().eval()));
                comm = std::max(comm, max_abs(h * n_op - n_op * h));
            }
        }
        ck.check("Hamiltonian Hermiticity", herm, 1e-12);
        ck.check("[H, N] = 0", comm, 1e-12);
    }

    // Collapse channels: count, and each either lowers N by one or commutes
    // (the f->e channels and the dephasing projectors conserve N).
    {
        const CollapseSet c = collapse_operators(p);
        const Operator n_op = excitation_number(lay);
        const bool lowers[12] = {true, true, true, false, true, true, false, true,
                                 false, false, false, false};
        double err = 0.0;
        for (std::size_t k = 0; k < c.ops.size(); ++k) {
            const Operator& op = c.ops[k];
            const Operator comm = op * n_op - n_op * op;
            err = std::max(err, lowers[k] ? max_abs(comm - op) : max_abs(comm));
        }
        ck.check_flag("12 collapse channels", c.ops.size() == 12,
                      std::to_string(c.ops.size()) + " channels");
        ck.check("collapse ladder structure", err, 1e-12);
    }

    // Stage-1 closed form against the Schroedinger propagator.
    {
        const StateVector psi0 = prepare_initial(s, lay);
        const Operator h_ideal = ideal_stage1_hamiltonian(p);
        const double t1 = stage_durations(p.g_eg_1, p.Omega).t1;
        const StateVector numeric = evolve_schrodinger(
            psi0, [&](double) { return h_ideal; }, 0.0, t1, icfg);
        const StateVector analytic = closed_form_stage1(psi0, p.g_eg_1, t1, lay);
        ck.check("stage-1 closed form", (numeric - analytic).norm(), 1e-8);
    }

    // Stage-2 closed form against the Schroedinger propagator.
    {
        ModelParams drive_only = p;
        drive_only.g12 = 0.0;
        const Operator h2 = stage2_hamiltonian(drive_only, 0.0);
        const StateVector psi0 = ideal_target(s, lay);
        const double t2 = stage_durations(p.g_eg_1, p.Omega).t2;
        const StateVector numeric = evolve_schrodinger(
            psi0, [&](double) { return h2; }, 0.0, t2, icfg);
        const StateVector analytic = closed_form_stage2(psi0, p.Omega, t2);
        ck.check("stage-2 closed form", (numeric - analytic).norm(), 1e-10);
    }

    // lindblad_rhs is trace-free.
    {
        const CollapseSet c = collapse_operators(p);
        StateVector psi = StateVector::Zero(lay.total_dim());
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            psi(i) = Complex(uni(rng) - 0.5, uni(rng) - 0.5);
        }
        psi.normalize();
        const DensityMatrix rho = psi * psi.adjoint();
        const DensityMatrix d = lindblad_rhs(rho, realistic_stage1_hamiltonian(p, 0.7), c);
        ck.check("lindblad_rhs trace-free", std::abs(d.trace()), 1e-13);
    }

    // Short lossy propagation: trace preserved, state stays positive.
    {
        const CollapseSet c = collapse_operators(p);
        const Stage1Hamiltonian h1(p);
        const DensityMatrix rho0 = prepare_initial(s, lay) * prepare_initial(s, lay).adjoint();
        PropagationStats stats;
        evolve_master(rho0, [&](double t) { return h1(t); }, c, 0.0, 1.0, icfg, &stats);
        ck.check("master-equation trace drift", stats.max_drift, 1e-8);
        ck.check("master-equation positivity", std::max(0.0, -stats.min_eigenvalue), 1e-8);
    }

    // Ideal transfer reaches unit fidelity.
    {
        const TransferResult r = run_transfer(p, s, icfg, {.ideal = true});
        ck.check("ideal transfer fidelity", std::abs(r.fidelity - 1.0), 1e-9);
    }

    return ck.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.passed) {
            return false;
        }
    }
    return true;
}

}  // namespace qst
