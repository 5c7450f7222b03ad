#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qst {

using Complex = std::complex<double>;

/// Dense complex matrix over a single subsystem or the full composite space.
/// Entries are dimensionless or carry rad/ns depending on the operator's role.
using Operator = Eigen::MatrixXcd;

/// Dense complex vector over the composite space (pure states).
using StateVector = Eigen::VectorXcd;

/// Dense complex matrix over the composite space (mixed states).
using DensityMatrix = Eigen::MatrixXcd;

/// Qutrit levels in the fixed order (g, e, f) = (0, 1, 2).
enum class Level : int { g = 0, e = 1, f = 2 };

/// Subsystems in the fixed tensor-product order.
enum class Slot : int { qutrit1 = 0, resonator1 = 1, resonator2 = 2, qutrit2 = 3 };

/// Composite Hilbert space of two qutrits and two boson modes, each mode
/// truncated at n_max photons.  Basis kets are |q1, n1, n2, q2> and the flat
/// index runs fastest over q2:
///
///   index = ((q1*(n_max+1) + n1)*(n_max+1) + n2)*3 + q2
struct SpaceLayout {
    explicit SpaceLayout(int n_max = 1);

    int n_max;

    int boson_dim() const { return n_max + 1; }
    int total_dim() const { return 9 * boson_dim() * boson_dim(); }
    int subsystem_dim(Slot slot) const;

    /// Flat basis index of |q1, n1, n2, q2>.  Throws std::invalid_argument
    /// for occupations outside [0, n_max].
    int flat_index(Level q1, int n1, int n2, Level q2) const;
};

/// Unit basis vector |q1, n1, n2, q2>.
StateVector basis_ket(Level q1, int n1, int n2, Level q2, const SpaceLayout& layout);

/// Photon annihilation operator on a single mode truncated at n_max:
/// entries sqrt(n) at (n-1, n).  Requires n_max >= 1.
Operator annihilation(int n_max);

/// Single-qutrit transition operator |upper><lower| (3x3).  upper == lower
/// gives the level projector.
Operator transition(Level upper, Level lower);

/// Lift a single-subsystem operator into the composite space, acting as the
/// identity on every other factor.  Throws on dimension mismatch.
Operator tensor_embed(const Operator& op, Slot slot, const SpaceLayout& layout);

/// Smallest eigenvalue of a Hermitian matrix.  Throws std::invalid_argument
/// if the input is not Hermitian within 1e-10 entrywise.
double min_eigenvalue_hermitian(const Operator& m);

/// Entrywise Hermiticity test: max |m - m^dagger| <= tol.
bool is_hermitian(const Operator& m, double tol);

}  // namespace qst
