#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qst/config.hpp"
#include "qst/protocol.hpp"

using namespace qst;

namespace {

ModelParams reference_params() {
    return RunConfig{}.to_model_params();
}

IntegratorConfig default_integrator() {
    return RunConfig{}.integrator_config();
}

InputState balanced_input() {
    return RunConfig{}.input_state();
}

}  // namespace

TEST_CASE("input state validation") {
    CHECK_NOTHROW(balanced_input().validate());
    CHECK_NOTHROW(InputState{Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0)}.validate());
    CHECK_THROWS_AS((InputState{Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0)}.validate()),
                    std::invalid_argument);
}

TEST_CASE("initial and target states") {
    const SpaceLayout lay(1);
    const InputState s{Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0)};

    const StateVector init = prepare_initial(s, lay);
    CHECK(init(lay.flat_index(Level::g, 0, 0, Level::g)) == Complex(0.6, 0.0));
    CHECK(init(lay.flat_index(Level::e, 0, 0, Level::g)) == Complex(0.0, 0.8));
    CHECK(init.norm() == doctest::Approx(1.0));

    const StateVector target = ideal_target(s, lay);
    CHECK(target(lay.flat_index(Level::g, 0, 0, Level::g)) == Complex(0.6, 0.0));
    CHECK(target(lay.flat_index(Level::g, 0, 0, Level::e)) == Complex(0.0, 0.8));

    const InputState ground{Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
    CHECK((prepare_initial(ground, lay) - ideal_target(ground, lay)).norm() == 0.0);

    const InputState excited{Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0)};
    CHECK(ideal_target(excited, lay)(lay.flat_index(Level::g, 0, 0, Level::e)) ==
          Complex(1.0, 0.0));
}

TEST_CASE("target is the prepared state with the qutrit roles swapped") {
    const SpaceLayout lay(1);
    std::mt19937 rng(41);
    const InputState s = oracles::random_input_state(rng);
    const StateVector init = prepare_initial(s, lay);
    const StateVector target = ideal_target(s, lay);

    StateVector permuted = StateVector::Zero(lay.total_dim());
    for (int q1 = 0; q1 < 3; ++q1)
        for (int n1 = 0; n1 <= 1; ++n1)
            for (int n2 = 0; n2 <= 1; ++n2)
                for (int q2 = 0; q2 < 3; ++q2) {
                    const int from = lay.flat_index(static_cast<Level>(q1), n1, n2,
                                                    static_cast<Level>(q2));
                    const int to = lay.flat_index(static_cast<Level>(q2), n2, n1,
                                                  static_cast<Level>(q1));
                    permuted(to) = init(from);
                }
    CHECK((permuted - target).norm() < 1e-15);
}

TEST_CASE("stage durations") {
    const double g = units::mhz_to_rad_per_ns(100.0);
    const double Omega = units::mhz_to_rad_per_ns(100.0);
    const StageDurations d = stage_durations(g, Omega);
    CHECK(std::abs(d.t1 - 3.5355339059327378) < 1e-12);
    CHECK(std::abs(d.t2 - 5.0) < 1e-12);
    CHECK(std::abs(d.total() - 8.535533905932738) < 1e-12);

    CHECK_THROWS_AS(stage_durations(0.0, Omega), std::invalid_argument);
    CHECK_THROWS_AS(stage_durations(g, -1.0), std::invalid_argument);
}

TEST_CASE("fidelity trivials") {
    const SpaceLayout lay(1);
    std::mt19937 rng(43);
    const StateVector psi = oracles::random_state(rng, lay.total_dim());
    const DensityMatrix pure = psi * psi.adjoint();
    CHECK(fidelity(pure, psi) == doctest::Approx(1.0));

    StateVector other = oracles::random_state(rng, lay.total_dim());
    other -= psi * psi.dot(other);
    other.normalize();
    CHECK(fidelity(other * other.adjoint(), psi) < 1e-7);

    const DensityMatrix mixed = 0.5 * pure + 0.5 * (other * other.adjoint());
    CHECK(fidelity(mixed, psi) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));

    CHECK_THROWS_AS(fidelity(DensityMatrix::Identity(3, 3), psi), std::invalid_argument);
}

TEST_CASE("ideal transfer is exact for random inputs") {
    const ModelParams p = reference_params();
    const IntegratorConfig cfg = default_integrator();
    std::mt19937 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const InputState s = oracles::random_input_state(rng);
        const TransferResult r = run_transfer(p, s, cfg, {.ideal = true});
        CHECK(std::abs(r.fidelity - 1.0) < 1e-9);
        CHECK(r.t_total == doctest::Approx(r.t1 + r.t2));
        CHECK(r.steps > 0);
    }
}

TEST_CASE("two ideal pipelines agree: closed form vs numerical propagation") {
    const ModelParams p = reference_params();
    const SpaceLayout& lay = p.layout;
    const IntegratorConfig cfg = default_integrator();
    const StageDurations d = stage_durations(p.g_eg_1, p.Omega);
    const Operator h1 = ideal_stage1_hamiltonian(p);
    ModelParams no_crosstalk = p;
    no_crosstalk.g12 = 0.0;
    const Operator h2 = stage2_hamiltonian(no_crosstalk, 0.0);

    std::mt19937 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        const InputState s = oracles::random_input_state(rng);
        const StateVector psi0 = prepare_initial(s, lay);

        const StateVector analytic = closed_form_stage2(
            closed_form_stage1(psi0, p.g_eg_1, d.t1, lay), p.Omega, d.t2);
        StateVector numeric = evolve_schrodinger(
            psi0, [&](double) { return h1; }, 0.0, d.t1, cfg);
        numeric = evolve_schrodinger(
            numeric, [&](double) { return h2; }, d.t1, d.t1 + d.t2, cfg);
        CHECK((analytic - numeric).norm() < 1e-8);
    }
}

TEST_CASE("global phase on the input leaves the fidelity unchanged") {
    const ModelParams p = reference_params();
    const IntegratorConfig cfg = default_integrator();
    const InputState s = balanced_input();
    const Complex phase = std::exp(Complex(0.0, 0.83));
    const InputState rotated{phase * s.alpha, phase * s.beta, phase * s.gamma};

    const TransferResult a = run_transfer(p, s, cfg);
    const TransferResult b = run_transfer(p, rotated, cfg);
    CHECK(std::abs(a.fidelity - b.fidelity) < 1e-10);
}

TEST_CASE("clock reset at the stage boundary barely moves the fidelity") {
    const ModelParams p = reference_params();
    const IntegratorConfig cfg = default_integrator();
    const InputState s = balanced_input();
    const TransferResult global_clock = run_transfer(p, s, cfg);
    const TransferResult reset_clock = run_transfer(p, s, cfg, {.reset_clock = true});
    CHECK(std::abs(global_clock.fidelity - reset_clock.fidelity) < 1e-4);
}

TEST_CASE("fidelity degrades monotonically as any single rate grows") {
    const IntegratorConfig cfg = default_integrator();
    const InputState s = balanced_input();

    ModelParams base = reference_params();
    base.delta = 0.0;
    base.g12 = 0.0;
    base.kappa_1 = base.kappa_2 = 0.0;
    base.gamma_eg = base.gamma_fe = base.gamma_fg = 0.0;
    base.gamma_phi_e = base.gamma_phi_f = 0.0;

    struct Channel {
        const char* name;
        void (*set)(ModelParams&, double);
    };
    const Channel channels[] = {
        {"kappa_1", [](ModelParams& p, double r) { p.kappa_1 = r; }},
        {"kappa_2", [](ModelParams& p, double r) { p.kappa_2 = r; }},
        {"gamma_eg", [](ModelParams& p, double r) { p.gamma_eg = r; }},
        {"gamma_fe", [](ModelParams& p, double r) { p.gamma_fe = r; }},
        {"gamma_fg", [](ModelParams& p, double r) { p.gamma_fg = r; }},
        {"gamma_phi_e", [](ModelParams& p, double r) { p.gamma_phi_e = r; }},
        {"gamma_phi_f", [](ModelParams& p, double r) { p.gamma_phi_f = r; }},
    };
    for (const Channel& ch : channels) {
        CAPTURE(ch.name);
        double previous = 2.0;
        for (int step = 0; step < 10; ++step) {
            ModelParams p = base;
            ch.set(p, step * 4e-4);
            const double f = run_transfer(p, s, cfg).fidelity;
            CHECK(f <= previous + 1e-9);
            previous = f;
        }
    }
}

TEST_CASE("step size too coarse for the crosstalk frequency is rejected") {
    const ModelParams p = reference_params();
    IntegratorConfig cfg = default_integrator();
    cfg.dt = 0.05;  // crosstalk period is 0.4 ns; need <= 0.02
    CHECK_THROWS_AS(run_transfer(p, balanced_input(), cfg), std::invalid_argument);
}
