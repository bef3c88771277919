// KMS relation and Lindblad coefficients

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpair/errors.hpp"
#include "qpair/rates.hpp"

using namespace qpair;

namespace {

ModelParams params(double w1, double w2, double lambda) {
    ModelParams p;
    p.omega1 = w1;
    p.omega2 = w2;
    p.lambda = lambda;
    return p;
}

BathSpectrum random_bath(double t_max) {
    return {oracle::uniform(0.0, 0.05), oracle::uniform(0.0, 0.05), oracle::uniform(0.0, t_max)};
}

} // namespace

TEST_CASE("kms_rate") {
    CHECK(kms_rate(0.1, 9.5, 0.0) == 0.0);
    CHECK(std::abs(kms_rate(0.1, 3.0, 3.0e12) - 0.1) < 1e-10);
    CHECK(std::abs(kms_rate(0.1, 2.0, 1.0) - 0.1 * std::exp(-2.0)) < 1e-16);
    CHECK(std::abs(kms_rate(0.1, 2.0, 1.0) - 0.0135335283) < 1e-10);
    CHECK(kms_rate(0.1, 800.0, 1.0) == 0.0);
    CHECK(kms_rate(0.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(kms_rate(-0.1, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(kms_rate(0.1, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(kms_rate(0.1, 1.0, -1.0), InvalidArgument);
}

TEST_CASE("resonant equal flat baths at zero temperature") {
    const double gamma = 0.01;
    for (const double lambda : {1e-6, 0.3, 1.0, 5.0}) {
        const DressedBasis b = diagonalize(params(10, 10, lambda));
        const auto r = lindblad_rates(b, BathSpectrum::flat(gamma), BathSpectrum::flat(gamma));
        CAPTURE(lambda);
        CHECK(std::abs(r.c_cr_I) < 1e-17);
        CHECK(std::abs(r.c_cr_II) < 1e-17);
        const double s = std::sin(b.theta_I);
        CHECK(std::abs(r.c_I - gamma * (1 + s)) < 1e-15);
        CHECK(std::abs(r.c_II - gamma * (1 - s)) < 1e-15);
        CHECK(r.cbar_I == 0.0);
        CHECK(r.cbar_II == 0.0);
        CHECK(r.cbar_cr_I == 0.0);
        CHECK(r.cbar_cr_II == 0.0);
    }
    const DressedBasis weak = diagonalize(params(10, 10, 1e-9));
    const auto r = lindblad_rates(weak, BathSpectrum::flat(gamma), BathSpectrum::flat(gamma));
    CHECK(std::abs(r.c_I - gamma) < 1e-12);
    CHECK(std::abs(r.c_II - gamma) < 1e-12);
}

TEST_CASE("uncoupled qubits decay independently") {
    const DressedBasis b = diagonalize(params(1, 2, 0));
    const BathSpectrum bath1{0.03, 0.05, 0.0};
    const BathSpectrum bath2{0.07, 0.02, 0.0};
    const auto r = lindblad_rates(b, bath1, bath2);
    CHECK(r.c_I == 0.03);
    CHECK(r.c_II == 0.02);
    CHECK(r.c_cr_I == 0.03);
    CHECK(r.c_cr_II == 0.02);
}

TEST_CASE("coefficient identities over random parameters") {
    for (int trial = 0; trial < 300; ++trial) {
        const ModelParams p = oracle::random_params();
        const DressedBasis b = diagonalize(p);
        const BathSpectrum bath1 = random_bath(50.0), bath2 = random_bath(50.0);
        const auto r = lindblad_rates(b, bath1, bath2);

        // Squared factors written directly in terms of the mixing angles.
        const double cI = std::cos(b.theta_I / 2), sI = std::sin(b.theta_I / 2);
        const double cII = std::cos(b.theta_II / 2), sII = std::sin(b.theta_II / 2);
        const double first_I = bath1.gamma_at_omega_I * std::pow(cI * cII + sI * sII, 2);
        const double second_I = bath2.gamma_at_omega_I * std::pow(cI * sII + sI * cII, 2);
        const double first_II = bath1.gamma_at_omega_II * std::pow(cI * sII - sI * cII, 2);
        const double second_II = bath2.gamma_at_omega_II * std::pow(cI * cII - sI * sII, 2);

        CHECK(std::abs((r.c_I + r.c_cr_I) - 2 * first_I) < 1e-12);
        CHECK(std::abs((r.c_I - r.c_cr_I) - 2 * second_I) < 1e-12);
        CHECK(std::abs((r.c_II - r.c_cr_II) - 2 * first_II) < 1e-12);
        CHECK(std::abs((r.c_II + r.c_cr_II) - 2 * second_II) < 1e-12);

        CHECK(r.c_I >= 0.0);
        CHECK(r.c_II >= 0.0);
        CHECK(r.cbar_I >= 0.0);
        CHECK(r.cbar_II >= 0.0);
        CHECK(std::abs(r.c_cr_I) <= r.c_I + 1e-18);
        CHECK(std::abs(r.c_cr_II) <= r.c_II + 1e-18);
        CHECK(std::abs(r.cbar_cr_I) <= r.cbar_I + 1e-18);
        CHECK(std::abs(r.cbar_cr_II) <= r.cbar_II + 1e-18);
    }
}

TEST_CASE("cross coefficients agree with sx matrix elements between dressed states") {
    // Off resonance with unequal baths, the only regime where the sign pattern
    // of the cross terms is observable.
    for (int trial = 0; trial < 100; ++trial) {
        const ModelParams p = oracle::random_params();
        const DressedBasis b = diagonalize(p);
        const BathSpectrum bath1 = random_bath(0.0), bath2 = random_bath(0.0);
        const auto r = lindblad_rates(b, bath1, bath2);
        const Matrix4r A1 = b.U.transpose() * oracle::sigma_x_on(1) * b.U;
        const Matrix4r A2 = b.U.transpose() * oracle::sigma_x_on(2) * b.U;
        enum { a, bb, c, d };
        const double gI1 = bath1.gamma_at_omega_I, gI2 = bath2.gamma_at_omega_I;
        const double gII1 = bath1.gamma_at_omega_II, gII2 = bath2.gamma_at_omega_II;
        CHECK(std::abs(r.c_I - (gI1 * A1(a, bb) * A1(a, bb) + gI2 * A2(a, bb) * A2(a, bb))) < 1e-14);
        CHECK(std::abs(r.c_I - (gI1 * A1(c, d) * A1(c, d) + gI2 * A2(c, d) * A2(c, d))) < 1e-14);
        CHECK(std::abs(r.c_II - (gII1 * A1(a, c) * A1(a, c) + gII2 * A2(a, c) * A2(a, c))) < 1e-14);
        CHECK(std::abs(r.c_cr_I - (gI1 * A1(a, bb) * A1(c, d) + gI2 * A2(a, bb) * A2(c, d))) < 1e-14);
        CHECK(std::abs(r.c_cr_II - (gII1 * A1(a, c) * A1(bb, d) + gII2 * A2(a, c) * A2(bb, d))) < 1e-14);
    }
}

TEST_CASE("detailed balance at a common temperature") {
    for (int trial = 0; trial < 200; ++trial) {
        const ModelParams p = oracle::random_params();
        const DressedBasis b = diagonalize(p);
        const double T = oracle::uniform(0.05, 2.0) * b.omega_I;
        BathSpectrum bath1 = random_bath(0.0), bath2 = random_bath(0.0);
        bath1.temperature = bath2.temperature = T;
        const auto r = lindblad_rates(b, bath1, bath2);
        if (r.c_I > 0) CHECK(std::abs(r.cbar_I / r.c_I - std::exp(-b.omega_I / T)) < 1e-12);
        if (r.c_II > 0) CHECK(std::abs(r.cbar_II / r.c_II - std::exp(-b.omega_II / T)) < 1e-12);
    }
}

TEST_CASE("zero temperature leaves no excitation") {
    for (int trial = 0; trial < 50; ++trial) {
        const DressedBasis b = diagonalize(oracle::random_params());
        const auto r = lindblad_rates(b, random_bath(0.0), random_bath(0.0));
        CHECK(r.cbar_I == 0.0);
        CHECK(r.cbar_II == 0.0);
        CHECK(r.cbar_cr_I == 0.0);
        CHECK(r.cbar_cr_II == 0.0);
    }
}

TEST_CASE("invalid baths are rejected") {
    const DressedBasis b = diagonalize(params(1, 1, 0.1));
    CHECK_THROWS_AS(lindblad_rates(b, {-0.1, 0.1, 0}, BathSpectrum::flat(0.1)), InvalidArgument);
    CHECK_THROWS_AS(lindblad_rates(b, BathSpectrum::flat(0.1), {0.1, NAN, 0}), InvalidArgument);
}
