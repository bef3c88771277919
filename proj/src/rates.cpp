// KMS relation and the dressed-basis Lindblad coefficients

#include "qpair/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpair/errors.hpp"

namespace qpair {

void validate(const BathSpectrum& bath, const char* name) {
    const std::string prefix(name);
    auto check = [&](double value, const char* field) {
        if (!std::isfinite(value)) {
            throw InvalidArgument(prefix + "." + field, "must be finite");
        }
        if (value < 0.0) {
            throw InvalidArgument(prefix + "." + field, "must be >= 0");
        }
    };
    check(bath.gamma_at_omega_I, "gamma_I");
    check(bath.gamma_at_omega_II, "gamma_II");
    check(bath.temperature, "temperature");
}

double LindbladRates::max_rate() const {
    return std::max({std::abs(c_I), std::abs(c_II), std::abs(c_cr_I), std::abs(c_cr_II), std::abs(cbar_I),
                     std::abs(cbar_II), std::abs(cbar_cr_I), std::abs(cbar_cr_II)});
}

double kms_rate(double gamma, double omega, double temperature) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("gamma", "must be finite and >= 0");
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidArgument("omega", "must be finite and > 0");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument("temperature", "must be finite and >= 0");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    const double ratio = omega / temperature;
    if (ratio > 700.0) {
        return 0.0;
    }
    return gamma * std::exp(-ratio);
}

TransitionWeights transition_weights(const DressedBasis& basis) {
    const auto [cI, sI] = basis.half_I;
    const auto [cII, sII] = basis.half_II;
    const double x = cI * cII + sI * sII;
    const double y = cI * sII + sI * cII;
    const double u = cI * sII - sI * cII;
    const double v = cI * cII - sI * sII;
    return {x * x, y * y, u * u, v * v};
}

namespace {

struct ChannelRates {
    double decay;
    double cross;
};

// One Bohr-frequency channel: gamma1, gamma2 are the two baths' spectral
// samples, w1, w2 the matching squared dipole factors.
ChannelRates channel_I(double gamma1, double gamma2, const TransitionWeights& w) {
    return {gamma1 * w.qubit1_I + gamma2 * w.qubit2_I, gamma1 * w.qubit1_I - gamma2 * w.qubit2_I};
}

ChannelRates channel_II(double gamma1, double gamma2, const TransitionWeights& w) {
    return {gamma1 * w.qubit1_II + gamma2 * w.qubit2_II, -gamma1 * w.qubit1_II + gamma2 * w.qubit2_II};
}

} // namespace

LindbladRates lindblad_rates(const DressedBasis& basis, const BathSpectrum& bath1, const BathSpectrum& bath2) {
    validate(bath1, "bath1");
    validate(bath2, "bath2");
    const TransitionWeights w = transition_weights(basis);

    const auto decay_I = channel_I(bath1.gamma_at_omega_I, bath2.gamma_at_omega_I, w);
    const auto decay_II = channel_II(bath1.gamma_at_omega_II, bath2.gamma_at_omega_II, w);
    const auto excite_I = channel_I(kms_rate(bath1.gamma_at_omega_I, basis.omega_I, bath1.temperature),
                                    kms_rate(bath2.gamma_at_omega_I, basis.omega_I, bath2.temperature), w);
    const auto excite_II = channel_II(kms_rate(bath1.gamma_at_omega_II, basis.omega_II, bath1.temperature),
                                      kms_rate(bath2.gamma_at_omega_II, basis.omega_II, bath2.temperature), w);

    LindbladRates rates;
    rates.c_I = decay_I.decay;
    rates.c_cr_I = decay_I.cross;
    rates.c_II = decay_II.decay;
    rates.c_cr_II = decay_II.cross;
    rates.cbar_I = excite_I.decay;
    rates.cbar_cr_I = excite_I.cross;
    rates.cbar_II = excite_II.decay;
    rates.cbar_cr_II = excite_II.cross;
    return rates;
}

} // namespace qpair
