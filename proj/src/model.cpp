#include "qst/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qst {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string("ModelParams: ") + name +
                                    " must be finite and >= 0");
    }
}

Complex phase(double angle) {
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace

void ModelParams::validate() const {
    require_nonnegative(g_eg_1, "g_eg_1");
    require_nonnegative(g_eg_2, "g_eg_2");
    require_nonnegative(g_fg_1, "g_fg_1");
    require_nonnegative(g_fg_2, "g_fg_2");
    require_nonnegative(g12, "g12");
    require_nonnegative(omega_c1, "omega_c1");
    require_nonnegative(omega_c2, "omega_c2");
    require_nonnegative(Omega, "Omega");
    require_nonnegative(kappa_1, "kappa_1");
    require_nonnegative(kappa_2, "kappa_2");
    require_nonnegative(gamma_eg, "gamma_eg");
    require_nonnegative(gamma_fe, "gamma_fe");
    require_nonnegative(gamma_fg, "gamma_fg");
    require_nonnegative(gamma_phi_e, "gamma_phi_e");
    require_nonnegative(gamma_phi_f, "gamma_phi_f");
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("ModelParams: delta must be finite");
    }
    if (Delta != omega_c2 - omega_c1) {
        throw std::invalid_argument("ModelParams: Delta must equal omega_c2 - omega_c1");
    }
}

Stage1Hamiltonian::Stage1Hamiltonian(const ModelParams& p)
    : delta_(p.delta), Delta_(p.Delta), g12_(p.g12) {
    p.validate();
    const SpaceLayout& lay = p.layout;
    const Operator a1 = tensor_embed(annihilation(lay.n_max), Slot::resonator1, lay);
    const Operator a2 = tensor_embed(annihilation(lay.n_max), Slot::resonator2, lay);
    const Operator sp_eg_1 = tensor_embed(transition(Level::e, Level::g), Slot::qutrit1, lay);
    const Operator sp_eg_2 = tensor_embed(transition(Level::e, Level::g), Slot::qutrit2, lay);
    const Operator sp_fg_1 = tensor_embed(transition(Level::f, Level::g), Slot::qutrit1, lay);
    const Operator sp_fg_2 = tensor_embed(transition(Level::f, Level::g), Slot::qutrit2, lay);
    coupling_ = p.g_eg_1 * (a1 * sp_eg_1) + p.g_eg_2 * (a1 * sp_eg_2) +
                p.g_fg_1 * (a2 * sp_fg_1) + p.g_fg_2 * (a2 * sp_fg_2);
    crosstalk_ = a1 * a2.adjoint();
}

Operator Stage1Hamiltonian::operator()(double t) const {
    Operator h = phase(delta_ * t) * coupling_ + (g12_ * phase(Delta_ * t)) * crosstalk_;
    Operator full = h + h.adjoint().eval();
    return full;
}

Stage2Hamiltonian::Stage2Hamiltonian(const ModelParams& p)
    : Delta_(p.Delta), g12_(p.g12) {
    p.validate();
    const SpaceLayout& lay = p.layout;
    const Operator sm_fe_2 = tensor_embed(transition(Level::e, Level::f), Slot::qutrit2, lay);
    drive_ = p.Omega * (sm_fe_2 + sm_fe_2.adjoint().eval());
    const Operator a1 = tensor_embed(annihilation(lay.n_max), Slot::resonator1, lay);
    const Operator a2 = tensor_embed(annihilation(lay.n_max), Slot::resonator2, lay);
    crosstalk_ = a1 * a2.adjoint();
}

Operator Stage2Hamiltonian::operator()(double t) const {
    const Complex z = g12_ * phase(Delta_ * t);
    Operator full = drive_ + z * crosstalk_ + std::conj(z) * crosstalk_.adjoint();
    return full;
}

Operator ideal_stage1_hamiltonian(const ModelParams& p) {
    ModelParams ideal = p;
    ideal.delta = 0.0;
    ideal.g12 = 0.0;
    return Stage1Hamiltonian(ideal)(0.0);
}

Operator realistic_stage1_hamiltonian(const ModelParams& p, double t) {
    return Stage1Hamiltonian(p)(t);
}

Operator stage2_hamiltonian(const ModelParams& p, double t) {
    return Stage2Hamiltonian(p)(t);
}

CollapseSet collapse_operators(const ModelParams& p) {
    p.validate();
    const SpaceLayout& lay = p.layout;
    const Operator a1 = tensor_embed(annihilation(lay.n_max), Slot::resonator1, lay);
    const Operator a2 = tensor_embed(annihilation(lay.n_max), Slot::resonator2, lay);

    CollapseSet set;
    set.ops.reserve(12);
    set.ops.push_back(std::sqrt(p.kappa_1) * a1);
    set.ops.push_back(std::sqrt(p.kappa_2) * a2);
    for (Slot q : {Slot::qutrit1, Slot::qutrit2}) {
        // sigma-_eg = |g><e|, sigma-_fe = |e><f|, sigma-_fg = |g><f|
        set.ops.push_back(std::sqrt(p.gamma_eg) *
                          tensor_embed(transition(Level::g, Level::e), q, lay));
        set.ops.push_back(std::sqrt(p.gamma_fe) *
                          tensor_embed(transition(Level::e, Level::f), q, lay));
        set.ops.push_back(std::sqrt(p.gamma_fg) *
                          tensor_embed(transition(Level::g, Level::f), q, lay));
    }
    for (Slot q : {Slot::qutrit1, Slot::qutrit2}) {
        set.ops.push_back(std::sqrt(p.gamma_phi_e) *
                          tensor_embed(transition(Level::e, Level::e), q, lay));
        set.ops.push_back(std::sqrt(p.gamma_phi_f) *
                          tensor_embed(transition(Level::f, Level::f), q, lay));
    }
    return set;
}

Operator excitation_number(const SpaceLayout& layout) {
    const int b = layout.boson_dim();
    const int dim = layout.total_dim();
    Operator n = Operator::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const int q2 = i % 3;
        const int n2 = (i / 3) % b;
        const int n1 = (i / (3 * b)) % b;
        const int q1 = i / (3 * b * b);
        n(i, i) = static_cast<double>(n1 + n2 + (q1 >= 1 ? 1 : 0) + (q2 >= 1 ? 1 : 0));
    }
    return n;
}

}  // namespace qst
