#include "qst/hilbert.hpp"

#include <stdexcept>
#include <string>

namespace qst {

namespace {

int level_index(Level q) {
    const int i = static_cast<int>(q);
    if (i < 0 || i > 2) {
        throw std::invalid_argument("qutrit level index " + std::to_string(i) +
                                    " outside {0,1,2}");
    }
    return i;
}

}  // namespace

SpaceLayout::SpaceLayout(int n_max_) : n_max(n_max_) {
    if (n_max < 1) {
        throw std::invalid_argument("SpaceLayout: n_max must be >= 1, got " +
                                    std::to_string(n_max));
    }
}

int SpaceLayout::subsystem_dim(Slot slot) const {
    switch (slot) {
        case Slot::qutrit1:
        case Slot::qutrit2:
            return 3;
        case Slot::resonator1:
        case Slot::resonator2:
            return boson_dim();
    }
    throw std::invalid_argument("invalid subsystem slot");
}

int SpaceLayout::flat_index(Level q1, int n1, int n2, Level q2) const {
    if (n1 < 0 || n1 > n_max || n2 < 0 || n2 > n_max) {
        throw std::invalid_argument("photon occupation outside [0, n_max]");
    }
    const int b = boson_dim();
    return ((level_index(q1) * b + n1) * b + n2) * 3 + level_index(q2);
}

StateVector basis_ket(Level q1, int n1, int n2, Level q2, const SpaceLayout& layout) {
    StateVector v = StateVector::Zero(layout.total_dim());
    v(layout.flat_index(q1, n1, n2, q2)) = 1.0;
    return v;
}

Operator annihilation(int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("annihilation: n_max must be >= 1");
    }
    const int d = n_max + 1;
    Operator a = Operator::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Operator transition(Level upper, Level lower) {
    Operator t = Operator::Zero(3, 3);
    t(level_index(upper), level_index(lower)) = 1.0;
    return t;
}

Operator tensor_embed(const Operator& op, Slot slot, const SpaceLayout& layout) {
    const int sub = layout.subsystem_dim(slot);
    if (op.rows() != sub || op.cols() != sub) {
        throw std::invalid_argument(
            "tensor_embed: operator dimension " + std::to_string(op.rows()) +
            " does not match subsystem dimension " + std::to_string(sub));
    }
    const int b = layout.boson_dim();
    // Stride of the slot's digit in the mixed-radix flat index (3, b, b, 3).
    int stride = 0;
    switch (slot) {
        case Slot::qutrit1:    stride = 3 * b * b; break;
        case Slot::resonator1: stride = 3 * b;     break;
        case Slot::resonator2: stride = 3;         break;
        case Slot::qutrit2:    stride = 1;         break;
    }
    const int dim = layout.total_dim();
    Operator out = Operator::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const int c = (j / stride) % sub;
        const int base = j - c * stride;
        for (int r = 0; r < sub; ++r) {
            const Complex v = op(r, c);
            if (v != Complex(0.0, 0.0)) {
                out(base + r * stride, j) = v;
            }
        }
    }
    return out;
}

bool is_hermitian(const Operator& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    if (m.size() == 0) {
        return true;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue_hermitian(const Operator& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("min_eigenvalue_hermitian: matrix not square");
    }
    if (!is_hermitian(m, 1e-10)) {
        throw std::invalid_argument("min_eigenvalue_hermitian: matrix not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Operator> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue_hermitian: eigensolver failed");
    }
    return solver.eigenvalues()(0);
}

}  // namespace qst
