#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "qst/hilbert.hpp"

using namespace qst;

TEST_CASE("space layout dimensions and frozen flat indices") {
    const SpaceLayout lay(1);
    CHECK(lay.total_dim() == 36);
    CHECK(lay.boson_dim() == 2);
    CHECK(lay.flat_index(Level::g, 0, 0, Level::g) == 0);
    CHECK(lay.flat_index(Level::e, 0, 0, Level::g) == 12);
    CHECK(lay.flat_index(Level::f, 1, 1, Level::f) == 35);

    const SpaceLayout lay2(2);
    CHECK(lay2.total_dim() == 81);

    CHECK_THROWS_AS(SpaceLayout(0), std::invalid_argument);
    CHECK_THROWS_AS(lay.flat_index(Level::g, 2, 0, Level::g), std::invalid_argument);
    CHECK_THROWS_AS(lay.flat_index(Level::g, 0, -1, Level::g), std::invalid_argument);
}

TEST_CASE("flat index is a bijection onto [0, total_dim)") {
    for (int n_max : {1, 2, 3}) {
        const SpaceLayout lay(n_max);
        std::set<int> seen;
        for (int q1 = 0; q1 < 3; ++q1)
            for (int n1 = 0; n1 <= n_max; ++n1)
                for (int n2 = 0; n2 <= n_max; ++n2)
                    for (int q2 = 0; q2 < 3; ++q2) {
                        const int idx = lay.flat_index(static_cast<Level>(q1), n1, n2,
                                                       static_cast<Level>(q2));
                        CHECK(idx >= 0);
                        CHECK(idx < lay.total_dim());
                        CHECK(seen.insert(idx).second);
                    }
        CHECK(static_cast<int>(seen.size()) == lay.total_dim());
    }
}

TEST_CASE("basis kets are unit vectors with a single entry") {
    const SpaceLayout lay(1);
    const StateVector v = basis_ket(Level::e, 0, 0, Level::g, lay);
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(v(12) == Complex(1.0, 0.0));
    CHECK(v.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("annihilation operator ladder entries") {
    const Operator a1 = annihilation(1);
    CHECK(a1.rows() == 2);
    CHECK(a1(0, 1) == Complex(1.0, 0.0));
    CHECK(a1(0, 0) == Complex(0.0, 0.0));
    CHECK(a1(1, 0) == Complex(0.0, 0.0));
    CHECK(a1(1, 1) == Complex(0.0, 0.0));

    const Operator a2 = annihilation(2);
    CHECK(std::abs(a2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a2(1, 2) - std::sqrt(2.0)) < 1e-15);

    // number operator eigenvalue on |1>
    const Operator num = a2.adjoint() * a2;
    StateVector one = StateVector::Zero(3);
    one(1) = 1.0;
    CHECK((num * one - one).norm() < 1e-15);

    CHECK_THROWS_AS(annihilation(0), std::invalid_argument);
}

TEST_CASE("truncated commutator [a, a_dag] is identity below the cutoff") {
    for (int n_max : {1, 2, 4}) {
        const Operator a = annihilation(n_max);
        const Operator comm = a * a.adjoint() - a.adjoint() * a;
        for (int n = 0; n < n_max; ++n) {
            CHECK(std::abs(comm(n, n) - 1.0) < 1e-14);
        }
        // the top level picks up the truncation artifact
        CHECK(std::abs(comm(n_max, n_max) + static_cast<double>(n_max)) < 1e-14);
    }
}

TEST_CASE("transition operators") {
    const Operator eg = transition(Level::e, Level::g);
    CHECK(eg(1, 0) == Complex(1.0, 0.0));
    CHECK(eg.cwiseAbs().sum() == doctest::Approx(1.0));

    const Operator ff = transition(Level::f, Level::f);
    CHECK(ff(2, 2) == Complex(1.0, 0.0));
    CHECK(ff.cwiseAbs().sum() == doctest::Approx(1.0));

    // |e><f| |f><e| projects onto e
    const Operator proj_e = transition(Level::e, Level::f) * transition(Level::f, Level::e);
    CHECK((proj_e - transition(Level::e, Level::e)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor_embed matches the explicit Kronecker product") {
    std::mt19937 rng(7);
    for (int n_max : {1, 2}) {
        const SpaceLayout lay(n_max);
        for (Slot slot : {Slot::qutrit1, Slot::resonator1, Slot::resonator2, Slot::qutrit2}) {
            const Operator op = oracles::random_operator(rng, lay.subsystem_dim(slot));
            const Operator embedded = tensor_embed(op, slot, lay);
            const Operator reference = oracles::embed_by_kron(op, slot, lay);
            CHECK((embedded - reference).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("embedded annihilation lowers a photon ket") {
    const SpaceLayout lay(1);
    const Operator a1 = tensor_embed(annihilation(1), Slot::resonator1, lay);
    const StateVector in = basis_ket(Level::g, 1, 0, Level::g, lay);
    const StateVector expect = basis_ket(Level::g, 0, 0, Level::g, lay);
    CHECK((a1 * in - expect).norm() < 1e-14);
}

TEST_CASE("tensor_embed is an algebra homomorphism per slot") {
    std::mt19937 rng(11);
    const SpaceLayout lay(1);
    for (Slot slot : {Slot::qutrit1, Slot::resonator2}) {
        const int d = lay.subsystem_dim(slot);
        const Operator a = oracles::random_operator(rng, d);
        const Operator b = oracles::random_operator(rng, d);
        const Operator lhs = tensor_embed(Operator(a * b), slot, lay);
        const Operator rhs = tensor_embed(a, slot, lay) * tensor_embed(b, slot, lay);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("operators embedded on distinct slots commute") {
    std::mt19937 rng(13);
    const SpaceLayout lay(1);
    const Operator a = tensor_embed(oracles::random_operator(rng, 3), Slot::qutrit1, lay);
    const Operator b = tensor_embed(oracles::random_operator(rng, 2), Slot::resonator1, lay);
    const Operator c = tensor_embed(oracles::random_operator(rng, 3), Slot::qutrit2, lay);
    CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((a * c - c * a).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b * c - c * b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("identity embeds to identity") {
    const SpaceLayout lay(1);
    for (Slot slot : {Slot::qutrit1, Slot::resonator1, Slot::resonator2, Slot::qutrit2}) {
        const int d = lay.subsystem_dim(slot);
        const Operator embedded = tensor_embed(Operator::Identity(d, d), slot, lay);
        CHECK((embedded - Operator::Identity(36, 36)).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(tensor_embed(Operator::Identity(2, 2), Slot::qutrit1, lay),
                    std::invalid_argument);
}

TEST_CASE("min_eigenvalue_hermitian on frozen cases") {
    CHECK(min_eigenvalue_hermitian(Operator::Identity(36, 36)) == doctest::Approx(1.0));

    Operator diag = Operator::Zero(2, 2);
    diag(0, 0) = -1.0;
    diag(1, 1) = 2.0;
    CHECK(min_eigenvalue_hermitian(diag) == doctest::Approx(-1.0));

    std::mt19937 rng(17);
    const StateVector psi = oracles::random_state(rng, 5);
    const Operator proj = psi * psi.adjoint();
    CHECK(std::abs(min_eigenvalue_hermitian(proj)) < 1e-12);

    Operator skew = Operator::Zero(2, 2);
    skew(0, 1) = Complex(0.0, 1.0);
    skew(1, 0) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(min_eigenvalue_hermitian(skew), std::invalid_argument);
}

TEST_CASE("min_eigenvalue_hermitian agrees with characteristic-polynomial roots") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + (trial % 2);
        const Operator m = oracles::random_hermitian(rng, dim);
        const double expected = oracles::min_eig_charpoly(m);
        const double got = min_eigenvalue_hermitian(m);
        // agreement to 1e-9 of the spectral range
        const double range = std::max(1.0, 2.0 * m.cwiseAbs().maxCoeff() * dim);
        CHECK(std::abs(got - expected) < 1e-9 * range);
    }
}
