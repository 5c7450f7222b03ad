#include "qst/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qst {

namespace {

struct SparseEntry {
    int r;
    int c;
    Complex v;
};

// Explicit nonzero list of a dense operator.  Exact zeros are dropped; no
// magnitude threshold is applied.
struct SparseOp {
    std::vector<SparseEntry> entries;

    void refill(const Operator& m) {
        entries.clear();
        const int rows = static_cast<int>(m.rows());
        const int cols = static_cast<int>(m.cols());
        for (int c = 0; c < cols; ++c) {
            for (int r = 0; r < rows; ++r) {
                const Complex v = m(r, c);
                if (v != Complex(0.0, 0.0)) {
                    entries.push_back({r, c, v});
                }
            }
        }
    }

    static SparseOp from_dense(const Operator& m) {
        SparseOp s;
        s.refill(m);
        return s;
    }
};

// out += alpha * (A x)
void add_left(Complex alpha, const SparseOp& a, const DensityMatrix& x, DensityMatrix& out) {
    for (const SparseEntry& e : a.entries) {
        out.row(e.r) += (alpha * e.v) * x.row(e.c);
    }
}

// out += alpha * (x A)
void add_right(Complex alpha, const SparseOp& a, const DensityMatrix& x, DensityMatrix& out) {
    for (const SparseEntry& e : a.entries) {
        out.col(e.c) += (alpha * e.v) * x.col(e.r);
    }
}

// out += A x A^dag, accumulated entry pair by entry pair.
void add_sandwich(const SparseOp& a, const DensityMatrix& x, DensityMatrix& out) {
    for (const SparseEntry& e1 : a.entries) {
        for (const SparseEntry& e2 : a.entries) {
            out(e1.r, e2.r) += e1.v * std::conj(e2.v) * x(e1.c, e2.c);
        }
    }
}

// Preprocessed collapse content: jump operators plus K = (1/2) sum C^dag C.
struct MasterWorkspace {
    std::vector<SparseOp> jumps;
    SparseOp k_half;
    SparseOp h_sparse;  // rebuilt at every Hamiltonian evaluation
    DensityMatrix k1, k2, k3, k4, stage, deriv;

    MasterWorkspace(const CollapseSet& c, Eigen::Index dim) {
        Operator k = Operator::Zero(dim, dim);
        for (const Operator& op : c.ops) {
            if (op.rows() != dim || op.cols() != dim) {
                throw std::invalid_argument("collapse operator dimension mismatch");
            }
            jumps.push_back(SparseOp::from_dense(op));
            k += 0.5 * (op.adjoint() * op);
        }
        k_half = SparseOp::from_dense(k);
        k1 = k2 = k3 = k4 = stage = deriv = DensityMatrix::Zero(dim, dim);
    }

    // deriv = -i[H(t), x] - {K, x} + sum_C C x C^dag
    void rhs(const HamiltonianFn& h_of_t, double t, const DensityMatrix& x) {
        const Operator h = h_of_t(t);
        if (h.rows() != x.rows() || h.cols() != x.cols()) {
            throw std::invalid_argument("Hamiltonian dimension mismatch");
        }
        h_sparse.refill(h);
        deriv.setZero();
        add_left(Complex(0.0, -1.0), h_sparse, x, deriv);
        add_right(Complex(0.0, 1.0), h_sparse, x, deriv);
        add_left(Complex(-1.0, 0.0), k_half, x, deriv);
        add_right(Complex(-1.0, 0.0), k_half, x, deriv);
        for (const SparseOp& c : jumps) {
            add_sandwich(c, x, deriv);
        }
    }
};

// Fixed-step plan from t0 to t1: n_full steps of dt plus one shortened
// remainder step landing exactly on t1.
struct StepPlan {
    long long n_full;
    double remainder;
};

StepPlan plan_steps(double t0, double t1, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    }
    if (t1 < t0) {
        throw std::invalid_argument("evolve: t1 must be >= t0");
    }
    const double span = t1 - t0;
    long long n = static_cast<long long>(std::floor(span / dt));
    if (n < 0) {
        n = 0;
    }
    double rem = span - static_cast<double>(n) * dt;
    if (rem <= dt * 1e-12) {
        rem = 0.0;
    }
    return {n, rem};
}

}  // namespace

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Operator& h, const CollapseSet& c) {
    if (rho.rows() != rho.cols() || h.rows() != rho.rows() || h.cols() != rho.cols()) {
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    }
    const Complex i_unit(0.0, 1.0);
    DensityMatrix d = -i_unit * (h * rho - rho * h);
    for (const Operator& op : c.ops) {
        if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
            throw std::invalid_argument("lindblad_rhs: collapse operator dimension mismatch");
        }
        const Operator cd_c = op.adjoint() * op;
        d += op * rho * op.adjoint() - 0.5 * (cd_c * rho + rho * cd_c);
    }
    return d;
}

DensityMatrix evolve_master(const DensityMatrix& rho0, const HamiltonianFn& h_of_t,
                            const CollapseSet& c, double t0, double t1,
                            const IntegratorConfig& cfg, PropagationStats* stats,
                            const MasterObserver& observer) {
    if (rho0.rows() != rho0.cols()) {
        throw std::invalid_argument("evolve_master: rho0 not square");
    }
    if (!is_hermitian(rho0, 1e-10)) {
        throw std::invalid_argument("evolve_master: rho0 not Hermitian within 1e-10");
    }
    if (std::abs(rho0.trace().real() - 1.0) > 1e-8) {
        throw std::invalid_argument("evolve_master: tr(rho0) != 1 within 1e-8");
    }

    const StepPlan plan = plan_steps(t0, t1, cfg.dt);
    MasterWorkspace w(c, rho0.rows());
    DensityMatrix rho = rho0;
    double max_drift = 0.0;
    long long steps = 0;

    if (observer) {
        observer(t0, rho);
    }

    const long long total = plan.n_full + (plan.remainder > 0.0 ? 1 : 0);
    for (long long i = 0; i < total; ++i) {
        const double t = t0 + static_cast<double>(i) * cfg.dt;
        const double h = (i < plan.n_full) ? cfg.dt : plan.remainder;
        const double t_next = (i == total - 1) ? t1 : t + h;

        w.rhs(h_of_t, t, rho);
        w.k1 = w.deriv;
        w.stage = rho + (0.5 * h) * w.k1;
        w.rhs(h_of_t, t + 0.5 * h, w.stage);
        w.k2 = w.deriv;
        w.stage = rho + (0.5 * h) * w.k2;
        w.rhs(h_of_t, t + 0.5 * h, w.stage);
        w.k3 = w.deriv;
        w.stage = rho + h * w.k3;
        w.rhs(h_of_t, t_next, w.stage);
        w.k4 = w.deriv;
        rho += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
        ++steps;

        const Complex tr = rho.trace();
        const double drift = std::abs(tr.real() - 1.0) + std::abs(tr.imag());
        if (drift > max_drift) {
            max_drift = drift;
        }
        if (observer) {
            observer(t_next, rho);
        }
    }

    DensityMatrix sym = 0.5 * (rho + rho.adjoint().eval());
    rho = sym;

    if (max_drift > 1e-6) {
        throw std::runtime_error("evolve_master: trace drift " + std::to_string(max_drift) +
                                 " exceeds 1e-6; reduce dt");
    }
    const double min_eig = min_eigenvalue_hermitian(rho);
    if (min_eig < -1e-6) {
        throw std::runtime_error("evolve_master: negative eigenvalue " + std::to_string(min_eig) +
                                 " below -1e-6; reduce dt");
    }
    if (stats) {
        stats->steps = steps;
        stats->max_drift = max_drift;
        stats->min_eigenvalue = min_eig;
    }
    return rho;
}

StateVector evolve_schrodinger(const StateVector& psi0, const HamiltonianFn& h_of_t,
                               double t0, double t1, const IntegratorConfig& cfg,
                               PropagationStats* stats) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("evolve_schrodinger: psi0 not normalized within 1e-10");
    }
    const StepPlan plan = plan_steps(t0, t1, cfg.dt);
    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](double t, const StateVector& psi) -> StateVector {
        const Operator h = h_of_t(t);
        if (h.rows() != psi.size() || h.cols() != psi.size()) {
            throw std::invalid_argument("Hamiltonian dimension mismatch");
        }
        return minus_i * (h * psi);
    };

    StateVector psi = psi0;
    double max_drift = 0.0;
    long long steps = 0;
    const long long total = plan.n_full + (plan.remainder > 0.0 ? 1 : 0);
    for (long long i = 0; i < total; ++i) {
        const double t = t0 + static_cast<double>(i) * cfg.dt;
        const double h = (i < plan.n_full) ? cfg.dt : plan.remainder;
        const double t_next = (i == total - 1) ? t1 : t + h;

        const StateVector k1 = rhs(t, psi);
        const StateVector k2 = rhs(t + 0.5 * h, psi + (0.5 * h) * k1);
        const StateVector k3 = rhs(t + 0.5 * h, psi + (0.5 * h) * k2);
        const StateVector k4 = rhs(t_next, psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++steps;

        const double drift = std::abs(psi.norm() - 1.0);
        if (drift > max_drift) {
            max_drift = drift;
        }
    }

    if (max_drift > 1e-6) {
        throw std::runtime_error("evolve_schrodinger: norm drift " + std::to_string(max_drift) +
                                 " exceeds 1e-6; reduce dt");
    }
    psi.normalize();
    if (stats) {
        stats->steps = steps;
        stats->max_drift = max_drift;
        stats->min_eigenvalue = 0.0;
    }
    return psi;
}

namespace {

// One three-state chain L <-> M <-> R with equal couplings g evolving under
// the resonant stage-1 Hamiltonian.  c = cos(sqrt(2) g t), s = sin(sqrt(2) g t).
void apply_chain(double c, double s, Complex& l, Complex& m, Complex& r) {
    const Complex i_unit(0.0, 1.0);
    const Complex l_in = l, m_in = m, r_in = r;
    const double half_sum = 0.5 * (1.0 + c);
    const double half_diff = 0.5 * (1.0 - c);
    const double s_over_rt2 = s / std::sqrt(2.0);
    l = half_sum * l_in - i_unit * s_over_rt2 * m_in - half_diff * r_in;
    m = -i_unit * s_over_rt2 * l_in + c * m_in - i_unit * s_over_rt2 * r_in;
    r = -half_diff * l_in - i_unit * s_over_rt2 * m_in + half_sum * r_in;
}

}  // namespace

StateVector closed_form_stage1(const StateVector& psi0, double g, double t,
                               const SpaceLayout& layout) {
    if (psi0.size() != layout.total_dim()) {
        throw std::invalid_argument("closed_form_stage1: state dimension mismatch");
    }
    const int i_g00g = layout.flat_index(Level::g, 0, 0, Level::g);
    const int i_e00g = layout.flat_index(Level::e, 0, 0, Level::g);
    const int i_g10g = layout.flat_index(Level::g, 1, 0, Level::g);
    const int i_g00e = layout.flat_index(Level::g, 0, 0, Level::e);
    const int i_f00g = layout.flat_index(Level::f, 0, 0, Level::g);
    const int i_g01g = layout.flat_index(Level::g, 0, 1, Level::g);
    const int i_g00f = layout.flat_index(Level::g, 0, 0, Level::f);

    std::vector<bool> supported(psi0.size(), false);
    for (int idx : {i_g00g, i_e00g, i_g10g, i_g00e, i_f00g, i_g01g, i_g00f}) {
        supported[idx] = true;
    }
    for (Eigen::Index i = 0; i < psi0.size(); ++i) {
        if (!supported[i] && std::abs(psi0(i)) > 1e-10) {
            throw std::invalid_argument(
                "closed_form_stage1: state outside the supported single-excitation span");
        }
    }

    const double angle = std::sqrt(2.0) * g * t;
    const double c = std::cos(angle);
    const double s = std::sin(angle);

    StateVector psi = StateVector::Zero(psi0.size());
    psi(i_g00g) = psi0(i_g00g);
    Complex e_l = psi0(i_e00g), e_m = psi0(i_g10g), e_r = psi0(i_g00e);
    Complex f_l = psi0(i_f00g), f_m = psi0(i_g01g), f_r = psi0(i_g00f);
    apply_chain(c, s, e_l, e_m, e_r);
    apply_chain(c, s, f_l, f_m, f_r);
    psi(i_e00g) = e_l;
    psi(i_g10g) = e_m;
    psi(i_g00e) = e_r;
    psi(i_f00g) = f_l;
    psi(i_g01g) = f_m;
    psi(i_g00f) = f_r;
    return psi;
}

StateVector closed_form_stage2(const StateVector& psi0, double Omega, double t) {
    const Eigen::Index dim = psi0.size();
    const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim) / 9.0)));
    if (b < 1 || 9LL * b * b != dim) {
        throw std::invalid_argument("closed_form_stage2: dimension is not 9*(n_max+1)^2");
    }
    const double c = std::cos(Omega * t);
    const double s = std::sin(Omega * t);
    const Complex i_unit(0.0, 1.0);

    StateVector psi = psi0;
    // Blocks of 3 consecutive amplitudes share (q1, n1, n2); rotate (e, f).
    for (Eigen::Index base = 0; base < dim; base += 3) {
        const Complex e_in = psi0(base + 1);
        const Complex f_in = psi0(base + 2);
        psi(base + 1) = c * e_in - i_unit * s * f_in;
        psi(base + 2) = c * f_in - i_unit * s * e_in;
    }
    return psi;
}

}  // namespace qst
