// Coupled-qubit Hamiltonian and its exact dressed-state basis

#pragma once

#include <array>

#include "qpair/bath.hpp"
#include "qpair/density_matrix.hpp"

namespace qpair {

// H = omega1 s+s-(1) + omega2 s+s-(2) + (lambda/2) sx(1) sx(2), hbar = 1.
struct ModelParams {
    double omega1{1.0};
    double omega2{1.0};
    double lambda{0.0};   // the Hamiltonian coefficient is lambda / 2
    BathSpectrum bath1;
    BathSpectrum bath2;
};

// Requires finite values, omega1 > 0, omega2 >= omega1, lambda >= 0 and valid baths.
void validate(const ModelParams& params);

// cos and sin of half a mixing angle, the combinations every closed form uses.
struct HalfAngle {
    double cos{1.0};
    double sin{0.0};
};

struct DressedBasis {
    std::array<double, 4> energies{};  // E_a <= E_b <= E_c <= E_d
    double theta_I{0.0};               // in [0, pi/2]
    double theta_II{0.0};              // in [0, pi/2]
    HalfAngle half_I;
    HalfAngle half_II;
    double omega_I{0.0};               // E_b - E_a = E_d - E_c
    double omega_II{0.0};              // E_c - E_a = E_d - E_b
    double omega_da{0.0};
    double omega_cb{0.0};
    Matrix4r U = Matrix4r::Identity(); // columns |a>,|b>,|c>,|d> in computational order
};

Matrix4r hamiltonian_matrix(const ModelParams& params);

// Closed-form diagonalization. At lambda = 0 and omega1 == omega2 the mixing
// angle theta_II is taken as pi/2, its lambda -> 0+ limit at resonance.
DressedBasis diagonalize(const ModelParams& params);

DensityMatrix dressed_to_computational(const DressedBasis& basis, const DensityMatrix& rho);
DensityMatrix computational_to_dressed(const DressedBasis& basis, const DensityMatrix& rho);

// Generic cyclic-Jacobi eigensolver for real symmetric 4x4 matrices. It is kept
// free of any knowledge of the Hamiltonian structure so it can serve as an
// independent check on diagonalize().
struct Eigensystem {
    std::array<double, 4> values{};  // ascending
    Matrix4r vectors;                // column k belongs to values[k]
};

Eigensystem brute_force_eigensystem(const Matrix4r& H);

} // namespace qpair
