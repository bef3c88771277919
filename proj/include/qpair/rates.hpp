// Thermal excitation rates and the Lindblad coefficients of the dressed-state master equation

#pragma once

#include "qpair/bath.hpp"
#include "qpair/model.hpp"

namespace qpair {

// Decay (c_*) and excitation (cbar_*) coefficients. Index I labels the Bohr
// frequency omega_I (b->a, d->c), index II labels omega_II (c->a, d->b).
// Cross coefficients couple the coherence pairs and may be negative.
struct LindbladRates {
    double c_I{0.0};
    double c_II{0.0};
    double c_cr_I{0.0};
    double c_cr_II{0.0};
    double cbar_I{0.0};
    double cbar_II{0.0};
    double cbar_cr_I{0.0};
    double cbar_cr_II{0.0};

    double max_rate() const;
};

// KMS relation: gamma * exp(-omega / T). Exactly zero at T = 0, and zero when
// omega / T > 700 where the exponential is below double precision anyway.
double kms_rate(double gamma, double omega, double temperature);

// Squared dipole factors of sx(1) and sx(2) between dressed states. Each
// Lindblad coefficient is a bath-weighted combination of these four numbers.
struct TransitionWeights {
    double qubit1_I{0.0};   // |<a|sx(1)|b>|^2 = |<c|sx(1)|d>|^2
    double qubit2_I{0.0};   // |<a|sx(2)|b>|^2 = |<c|sx(2)|d>|^2
    double qubit1_II{0.0};  // |<a|sx(1)|c>|^2 = |<b|sx(1)|d>|^2
    double qubit2_II{0.0};  // |<a|sx(2)|c>|^2 = |<b|sx(2)|d>|^2
};

TransitionWeights transition_weights(const DressedBasis& basis);

LindbladRates lindblad_rates(const DressedBasis& basis, const BathSpectrum& bath1,
                             const BathSpectrum& bath2);

} // namespace qpair
