// Master-equation generator, numeric and analytic time evolution, stationary state

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qpair/density_matrix.hpp"
#include "qpair/model.hpp"
#include "qpair/rates.hpp"

namespace qpair {

struct Observables {
    std::array<double, 4> populations{};  // rho_aa, rho_bb, rho_cc, rho_dd
    std::optional<double> concurrence;    // filled by concurrence_series()
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<Observables> observables;

    std::size_t size() const { return times.size(); }
    // Appends a state and records its dressed populations.
    void push_back(double t, DensityMatrix state);
};

// d rho / dt in the dressed basis: -i[H, rho] with H = diag(energies) plus the
// decay, excitation and cross-coefficient dissipators.
Matrix4c generator_apply(const DressedBasis& basis, const LindbladRates& rates,
                         const DensityMatrix& rho);

// Raw-matrix form used by the integrator's inner loop; no tag check.
Matrix4c generator_apply(const DressedBasis& basis, const LindbladRates& rates,
                         const Matrix4c& rho);

struct IntegrationOptions {
    double t_end{1.0};
    std::size_t samples{101};   // uniform output grid on [0, t_end], endpoints included
    double dt_max{std::numeric_limits<double>::infinity()};
    double rtol{1e-10};
    double atol{1e-12};
};

// Adaptive Dormand-Prince 5(4) integration of the master equation, carried out
// in the frame rotating with H and mapped back exactly at the output times.
// States are re-Hermitized after every accepted step. Throws NumericFailure on step-size
// underflow or a non-finite state.
Trajectory integrate(const DressedBasis& basis, const LindbladRates& rates,
                     const DensityMatrix& rho0, const IntegrationOptions& options);

// True when the closed-form zero-temperature solution applies: every barred
// coefficient vanishes and both cross coefficients are zero up to rounding.
bool analytic_regime(const LindbladRates& rates);

// Closed-form evolution valid in analytic_regime(); throws InvalidArgument otherwise.
Trajectory analytic_zero_T(const DressedBasis& basis, const LindbladRates& rates,
                           const DensityMatrix& rho0, std::span<const double> times);

std::vector<double> uniform_grid(double t_end, std::size_t samples);

// Steady-state dressed populations (aa, bb, cc, dd); coherences vanish.
// Throws InvalidArgument when either channel has zero total rate.
std::array<double, 4> stationary_state(const LindbladRates& rates);

DensityMatrix stationary_density_matrix(const LindbladRates& rates);

// 10 / (smallest nonzero decay rate); throws if every decay rate is zero.
double default_horizon(const LindbladRates& rates);

// Markovian derivation assumes every rate is much smaller than omega_I.
bool weak_damping_violated(const DressedBasis& basis, const LindbladRates& rates);

} // namespace qpair
