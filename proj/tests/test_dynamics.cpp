// Generator, integrator, closed-form solutions

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpair/dynamics.hpp"
#include "qpair/errors.hpp"
#include "qpair/integrator.hpp"

using namespace qpair;

namespace {

struct Setup {
    ModelParams params;
    DressedBasis basis;
    LindbladRates rates;
};

Setup make(double w1, double w2, double lambda, BathSpectrum bath1, BathSpectrum bath2) {
    Setup s;
    s.params.omega1 = w1;
    s.params.omega2 = w2;
    s.params.lambda = lambda;
    s.params.bath1 = bath1;
    s.params.bath2 = bath2;
    s.basis = diagonalize(s.params);
    s.rates = lindblad_rates(s.basis, bath1, bath2);
    return s;
}

Setup resonant_zero_T() {
    return make(10, 10, 1, BathSpectrum::flat(0.01), BathSpectrum::flat(0.01));
}

DensityMatrix projector(int k) {
    Matrix4c m = Matrix4c::Zero();
    m(k, k) = 1.0;
    return DensityMatrix(m, Basis::dressed);
}

double max_diff(const Matrix4c& a, const Matrix4c& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

BathSpectrum random_bath(double t_max) {
    return {oracle::uniform(0.001, 0.05), oracle::uniform(0.001, 0.05), oracle::uniform(0.0, t_max)};
}

} // namespace

TEST_CASE("generator: ground state is stationary at zero temperature") {
    const Setup s = resonant_zero_T();
    CHECK(generator_apply(s.basis, s.rates, projector(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator: doubly excited state feeds both single-excitation levels") {
    const Setup s = resonant_zero_T();
    const Matrix4c d = generator_apply(s.basis, s.rates, projector(3));
    CHECK(std::abs(d(3, 3).real() + (s.rates.c_I + s.rates.c_II)) < 1e-16);
    CHECK(std::abs(d(1, 1).real() - s.rates.c_II) < 1e-16);
    CHECK(std::abs(d(2, 2).real() - s.rates.c_I) < 1e-16);
    CHECK(std::abs(d(0, 0)) == 0.0);
}

TEST_CASE("generator is trace-free and Hermitian-preserving") {
    for (int trial = 0; trial < 200; ++trial) {
        const Setup s = make(oracle::uniform(0.5, 5), oracle::uniform(5, 10), oracle::uniform(0, 3),
                             random_bath(5.0), random_bath(5.0));
        const Matrix4c rho = oracle::random_density();
        const Matrix4c d = generator_apply(s.basis, s.rates, DensityMatrix(rho, Basis::dressed));
        CHECK(std::abs(d.trace()) < 1e-14);
        CHECK(max_diff(d, d.adjoint()) < 1e-12);
    }
}

TEST_CASE("generator matches the jump-operator construction") {
    for (int trial = 0; trial < 200; ++trial) {
        double w1 = oracle::uniform(0.5, 20), w2 = oracle::uniform(0.5, 20);
        if (w2 < w1) std::swap(w1, w2);
        const BathSpectrum bath1 = random_bath(20.0), bath2 = random_bath(20.0);
        const Setup s = make(w1, w2, oracle::uniform(0.05, 10), bath1, bath2);
        const Matrix4c rho = oracle::random_density();
        const Matrix4c ours = generator_apply(s.basis, s.rates, rho);
        const Matrix4c reference = oracle::jump_operator_generator(s.basis, bath1, bath2, rho);
        CHECK(max_diff(ours, reference) < 1e-12 * std::max(1.0, s.basis.energies[3]));
    }
}

TEST_CASE("generator rejects computational-basis input") {
    const Setup s = resonant_zero_T();
    CHECK_THROWS_AS(generator_apply(s.basis, s.rates, DensityMatrix::maximally_mixed(Basis::computational)),
                    BasisMismatch);
}

TEST_CASE("integrate: free evolution only rotates coherences") {
    const Setup s = make(2, 3, 0.8, BathSpectrum::flat(0.0), BathSpectrum::flat(0.0));
    Matrix4c rho = Matrix4c::Zero();
    rho(1, 1) = rho(2, 2) = 0.5;
    rho(1, 2) = std::complex<double>(0.3, 0.4);
    rho(2, 1) = std::conj(rho(1, 2));
    IntegrationOptions opt;
    opt.t_end = 20;
    opt.samples = 41;
    const Trajectory traj = integrate(s.basis, s.rates, DensityMatrix(rho, Basis::dressed), opt);
    REQUIRE(traj.size() == 41);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const auto expected = std::exp(std::complex<double>(0, s.basis.omega_cb * t)) * rho(1, 2);
        CHECK(std::abs(traj.states[k](1, 2) - expected) < 1e-9);
        CHECK(std::abs(traj.states[k](1, 1).real() - 0.5) < 1e-12);
    }
}

TEST_CASE("integrate agrees with the closed form in the resonant zero-temperature regime") {
    const Setup s = resonant_zero_T();
    const double t_end = 10.0 / s.rates.c_I;
    IntegrationOptions opt;
    opt.t_end = t_end;
    opt.samples = 201;
    const Trajectory numeric = integrate(s.basis, s.rates, projector(3), opt);
    const Trajectory exact = analytic_zero_T(s.basis, s.rates, projector(3), numeric.times);
    double worst = 0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
        worst = std::max(worst, max_diff(numeric.states[k].entries(), exact.states[k].entries()));
        CHECK(std::abs(numeric.states[k].trace_error()) <= 1e-9);
        CHECK(numeric.states[k].min_eigenvalue() >= -1e-8);
    }
    CHECK(worst < 1e-8);

    // Random coherent initial states too.
    for (int trial = 0; trial < 3; ++trial) {
        const DensityMatrix rho0(oracle::random_density(), Basis::dressed);
        const Trajectory n = integrate(s.basis, s.rates, rho0, opt);
        const Trajectory e = analytic_zero_T(s.basis, s.rates, rho0, n.times);
        double w = 0;
        for (std::size_t k = 0; k < n.size(); ++k) w = std::max(w, max_diff(n.states[k].entries(), e.states[k].entries()));
        CHECK(w < 1e-8);
    }
}

TEST_CASE("integrate relaxes to the stationary state at a common temperature") {
    const double T = 1.5;
    const Setup s = make(1.0, 1.5, 0.5, {0.03, 0.02, T}, {0.01, 0.04, T});
    const DensityMatrix rho0(oracle::random_density(), Basis::dressed);
    IntegrationOptions opt;
    opt.t_end = 50.0 / std::min(s.rates.c_I, s.rates.c_II);
    opt.samples = 11;
    const Trajectory traj = integrate(s.basis, s.rates, rho0, opt);
    const DensityMatrix expected = stationary_density_matrix(s.rates);
    CHECK(max_diff(traj.states.back().entries(), expected.entries()) < 1e-6);
}

TEST_CASE("coherence blocks evolve independently") {
    const Setup s = make(1.0, 2.0, 0.7, {0.02, 0.03, 1.0}, {0.04, 0.01, 0.5});
    REQUIRE(std::abs(s.rates.c_cr_I) > 1e-4);
    REQUIRE(std::abs(s.rates.cbar_cr_II) > 1e-5);

    // Index pairs of each dynamically closed block (upper triangle).
    const std::vector<std::vector<std::pair<int, int>>> blocks{
        {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {{0, 2}, {1, 3}}, {{0, 1}, {2, 3}}, {{0, 3}}, {{1, 2}}};

    IntegrationOptions opt;
    opt.t_end = 30;
    opt.samples = 7;
    const Matrix4c base = oracle::random_density();

    for (std::size_t perturbed = 0; perturbed < blocks.size(); ++perturbed) {
        // The generator is linear, so evolving the perturbation on its own
        // isolates its influence on the other blocks.
        Matrix4c delta = Matrix4c::Zero();
        for (const auto& [i, j] : blocks[perturbed]) {
            delta(i, j) = std::complex<double>(oracle::uniform(-0.1, 0.1), i == j ? 0.0 : oracle::uniform(-0.1, 0.1));
            delta(j, i) = std::conj(delta(i, j));
        }
        const Matrix4c d_base = generator_apply(s.basis, s.rates, base);
        const Matrix4c d_perturbed = generator_apply(s.basis, s.rates, Matrix4c(base + delta));
        const Trajectory traj = integrate(s.basis, s.rates, DensityMatrix(delta, Basis::dressed), opt);
        for (std::size_t other = 0; other < blocks.size(); ++other) {
            if (other == perturbed) continue;
            for (const auto& [i, j] : blocks[other]) {
                CHECK(std::abs(d_perturbed(i, j) - d_base(i, j)) < 1e-12);
                for (std::size_t k = 0; k < traj.size(); ++k) {
                    CHECK(std::abs(traj.states[k](i, j)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("integrate preconditions and failures") {
    const Setup s = resonant_zero_T();
    IntegrationOptions opt;
    CHECK_THROWS_AS(integrate(s.basis, s.rates, DensityMatrix::maximally_mixed(Basis::computational), opt),
                    BasisMismatch);
    opt.t_end = -1;
    CHECK_THROWS_AS(integrate(s.basis, s.rates, projector(3), opt), InvalidArgument);
    opt.t_end = 1;
    opt.dt_max = 0;
    CHECK_THROWS_AS(integrate(s.basis, s.rates, projector(3), opt), InvalidArgument);

    // y' = y^2 from y = 1 blows up at t = 1.
    const MatrixRhs blowup = [](double, const Matrix4c& y) { return Matrix4c(y.cwiseProduct(y)); };
    const std::vector<double> times{0.0, 2.0};
    CHECK_THROWS_AS(dormand_prince(blowup, Matrix4c::Ones(), times, StepControl{}, [](auto, auto, const auto&) {}),
                    NumericFailure);

    LindbladRates bad = s.rates;
    bad.c_I = NAN;
    opt.dt_max = 1;
    CHECK_THROWS_AS(integrate(s.basis, bad, projector(3), opt), NumericFailure);
}

TEST_CASE("analytic_zero_T closed forms") {
    const Setup s = resonant_zero_T();
    const std::vector<double> times{0.0, 1.0, 10.0, 100.0, 500.0};
    const Trajectory d = analytic_zero_T(s.basis, s.rates, projector(3), times);
    const Trajectory b = analytic_zero_T(s.basis, s.rates, projector(1), times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        CHECK(std::abs(d.states[k](3, 3).real() - std::exp(-(s.rates.c_I + s.rates.c_II) * t)) < 1e-15);
        CHECK(std::abs(b.states[k](1, 1).real() - std::exp(-s.rates.c_I * t)) < 1e-15);
        CHECK(std::abs(b.states[k](0, 0).real() - (1 - std::exp(-s.rates.c_I * t))) < 1e-15);
        CHECK(std::abs(d.states[k].trace_error()) < 1e-15);
    }

    const DensityMatrix rho0(oracle::random_density(), Basis::dressed);
    const Trajectory at_zero = analytic_zero_T(s.basis, s.rates, rho0, std::vector<double>{0.0});
    CHECK(at_zero.states[0].entries() == rho0.entries());
}

TEST_CASE("analytic_zero_T refuses regimes it does not cover") {
    const Setup warm = make(10, 10, 1, BathSpectrum::flat(0.01, 2.0), BathSpectrum::flat(0.01, 2.0));
    CHECK_FALSE(analytic_regime(warm.rates));
    CHECK_THROWS_AS(analytic_zero_T(warm.basis, warm.rates, projector(3), std::vector<double>{0, 1}),
                    InvalidArgument);
    const Setup detuned = make(9, 10, 1, BathSpectrum::flat(0.01), BathSpectrum::flat(0.01));
    CHECK_FALSE(analytic_regime(detuned.rates));
    const Setup unequal = make(10, 10, 1, BathSpectrum::flat(0.01), BathSpectrum::flat(0.02));
    CHECK_FALSE(analytic_regime(unequal.rates));
    CHECK(analytic_regime(resonant_zero_T().rates));
    const Setup s = resonant_zero_T();
    CHECK_THROWS_AS(analytic_zero_T(s.basis, s.rates, projector(3), std::vector<double>{1, 0.5}), InvalidArgument);
}

TEST_CASE("stationary state") {
    const Setup cold = resonant_zero_T();
    CHECK(stationary_state(cold.rates) == std::array<double, 4>{1, 0, 0, 0});

    for (const double factor : {0.5, 1.0, 5.0}) {
        const Setup probe = resonant_zero_T();
        const double T = factor * probe.basis.omega_I;
        const Setup warm = make(10, 10, 1, BathSpectrum::flat(0.01, T), BathSpectrum::flat(0.01, T));
        const auto p = stationary_state(warm.rates);
        CHECK(std::abs(p[1] / p[0] - std::exp(-warm.basis.omega_I / T)) < 1e-12);
        CHECK(std::abs(p[2] / p[0] - std::exp(-warm.basis.omega_II / T)) < 1e-12);
        CHECK(std::abs(p[3] / p[0] - std::exp(-(warm.basis.omega_I + warm.basis.omega_II) / T)) < 1e-12);
        CHECK(std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) < 1e-15);
    }

    LindbladRates infinite;
    infinite.c_I = infinite.cbar_I = 0.3;
    infinite.c_II = infinite.cbar_II = 0.7;
    CHECK(stationary_state(infinite) == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});

    LindbladRates dead;
    dead.c_I = 0.1;
    CHECK_THROWS_AS(stationary_state(dead), InvalidArgument);
}

TEST_CASE("stationary populations are a fixed point of the generator") {
    for (int trial = 0; trial < 100; ++trial) {
        double w1 = oracle::uniform(0.5, 20), w2 = oracle::uniform(0.5, 20);
        if (w2 < w1) std::swap(w1, w2);
        const Setup s = make(w1, w2, oracle::uniform(0, 10), random_bath(30), random_bath(30));
        const Matrix4c d = generator_apply(s.basis, s.rates, stationary_density_matrix(s.rates));
        CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("horizon and weak-damping guard") {
    const Setup s = resonant_zero_T();
    CHECK(default_horizon(s.rates) == doctest::Approx(10.0 / s.rates.c_II));
    CHECK_THROWS_AS(default_horizon(LindbladRates{}), InvalidArgument);
    CHECK_FALSE(weak_damping_violated(s.basis, s.rates));
    const Setup strong = make(10, 10, 1, BathSpectrum::flat(2.0), BathSpectrum::flat(2.0));
    CHECK(weak_damping_violated(strong.basis, strong.rates));
}
