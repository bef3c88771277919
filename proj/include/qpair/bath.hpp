// Sampled spectral description of one thermal reservoir

#pragma once

namespace qpair {

// Spectral density of one bath sampled at the two Bohr frequencies of the
// coupled pair, plus its temperature (k_B = 1, same unit as frequencies).
// A flat spectrum has gamma_at_omega_I == gamma_at_omega_II.
struct BathSpectrum {
    double gamma_at_omega_I{0.0};
    double gamma_at_omega_II{0.0};
    double temperature{0.0};

    static BathSpectrum flat(double gamma, double temperature = 0.0) {
        return {gamma, gamma, temperature};
    }
};

// Throws InvalidArgument (field prefixed with `name`) on negative or non-finite entries.
void validate(const BathSpectrum& bath, const char* name = "bath");

} // namespace qpair
