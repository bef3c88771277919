// Dressed-basis master equation and its solutions

#include "qpair/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qpair/errors.hpp"
#include "qpair/integrator.hpp"

namespace qpair {

namespace {

constexpr int A = 0;
constexpr int B = 1;
constexpr int C = 2;
constexpr int D = 3;

using cd = std::complex<double>;

// rate * (|to><from| rho |from><to| - 1/2 {|from><from|, rho})
void add_jump(Matrix4c& out, const Matrix4c& rho, double rate, int to, int from) {
    if (rate == 0.0) {
        return;
    }
    out(to, to) += rate * rho(from, from);
    out.row(from) -= 0.5 * rate * rho.row(from);
    out.col(from) -= 0.5 * rate * rho.col(from);
}

// rate * |x><y| rho |u><v|
void add_sandwich(Matrix4c& out, const Matrix4c& rho, double rate, int x, int y, int u, int v) {
    out(x, v) += rate * rho(y, u);
}

// Bohr frequency E_i - E_j of entry k in column-major storage.
double bohr(const DressedBasis& basis, int k) {
    return basis.energies[k % 4] - basis.energies[k / 4];
}

// The dissipative part of the generator in the frame rotating with H, where
// rho~_ij = e^{i(E_i - E_j)t} rho_ij. Sampled from generator_apply on the matrix
// units with the commutator removed; every term is a sparse entry-to-entry map
// carrying the phase e^{i(w_to - w_from)t}, which is 1 for the secular terms.
class RotatingGenerator {
public:
    RotatingGenerator(const DressedBasis& basis, const LindbladRates& rates) {
        for (int k = 0; k < 16; ++k) {
            Matrix4c unit = Matrix4c::Zero();
            unit.data()[k] = 1.0;
            Matrix4c image = generator_apply(basis, rates, unit);
            image.data()[k] -= cd(0.0, -bohr(basis, k));
            for (int m = 0; m < 16; ++m) {
                if (image.data()[m] != 0.0) {
                    terms_.push_back({m, k, image.data()[m], bohr(basis, m) - bohr(basis, k)});
                }
            }
        }
    }

    Matrix4c operator()(double t, const Matrix4c& rho) const {
        Matrix4c out = Matrix4c::Zero();
        const cd* in = rho.data();
        cd* dst = out.data();
        for (const Term& term : terms_) {
            const cd c = term.detuning == 0.0 ? term.coefficient
                                              : term.coefficient * std::polar(1.0, term.detuning * t);
            // Written out to avoid the library call behind checked complex multiplication.
            const double x = in[term.from].real(), y = in[term.from].imag();
            dst[term.to] += cd(c.real() * x - c.imag() * y, c.real() * y + c.imag() * x);
        }
        return out;
    }

private:
    struct Term {
        int to;
        int from;
        cd coefficient;
        double detuning;
    };
    std::vector<Term> terms_;
};

// rho_ij = e^{-i(E_i - E_j)t} rho~_ij, or the inverse for sign = +1.
Matrix4c rotate(const DressedBasis& basis, const Matrix4c& rho, double t, double sign) {
    Matrix4c out = rho;
    for (int k = 0; k < 16; ++k) {
        const double w = bohr(basis, k);
        if (w != 0.0) {
            out.data()[k] *= std::polar(1.0, sign * w * t);
        }
    }
    return out;
}

} // namespace

void Trajectory::push_back(double t, DensityMatrix state) {
    Observables obs;
    for (int k = 0; k < 4; ++k) {
        obs.populations[k] = state(k, k).real();
    }
    times.push_back(t);
    states.push_back(std::move(state));
    observables.push_back(obs);
}

Matrix4c generator_apply(const DressedBasis& basis, const LindbladRates& rates, const Matrix4c& rho) {
    Matrix4c out;
    const auto& E = basis.energies;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out(i, j) = cd(0.0, -(E[i] - E[j])) * rho(i, j);
        }
    }

    // Decay: channel I carries b->a and d->c, channel II carries c->a and d->b.
    add_jump(out, rho, rates.c_I, A, B);
    add_jump(out, rho, rates.c_II, A, C);
    add_jump(out, rho, rates.c_I, C, D);
    add_jump(out, rho, rates.c_II, B, D);
    // Thermal excitation along the reversed transitions.
    add_jump(out, rho, rates.cbar_I, B, A);
    add_jump(out, rho, rates.cbar_II, C, A);
    add_jump(out, rho, rates.cbar_I, D, C);
    add_jump(out, rho, rates.cbar_II, D, B);

    // Cross terms between the two transitions sharing a Bohr frequency.
    add_sandwich(out, rho, rates.c_cr_I, A, B, D, C);
    add_sandwich(out, rho, rates.c_cr_I, C, D, B, A);
    add_sandwich(out, rho, rates.c_cr_II, A, C, D, B);
    add_sandwich(out, rho, rates.c_cr_II, B, D, C, A);
    add_sandwich(out, rho, rates.cbar_cr_I, D, C, A, B);
    add_sandwich(out, rho, rates.cbar_cr_I, B, A, C, D);
    add_sandwich(out, rho, rates.cbar_cr_II, D, B, A, C);
    add_sandwich(out, rho, rates.cbar_cr_II, C, A, B, D);
    return out;
}

Matrix4c generator_apply(const DressedBasis& basis, const LindbladRates& rates, const DensityMatrix& rho) {
    rho.require_basis(Basis::dressed, "generator_apply");
    return generator_apply(basis, rates, rho.entries());
}

std::vector<double> uniform_grid(double t_end, std::size_t samples) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw InvalidArgument("t_end", "must be finite and > 0");
    }
    if (samples < 2) {
        throw InvalidArgument("samples", "must be >= 2");
    }
    std::vector<double> grid(samples);
    const double n = static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        grid[k] = t_end * (static_cast<double>(k) / n);
    }
    grid.back() = t_end;
    return grid;
}

Trajectory integrate(const DressedBasis& basis, const LindbladRates& rates, const DensityMatrix& rho0,
                     const IntegrationOptions& options) {
    rho0.require_basis(Basis::dressed, "integrate");
    if (!(options.dt_max > 0.0)) {
        throw InvalidArgument("dt_max", "must be > 0");
    }
    const std::vector<double> grid = uniform_grid(options.t_end, options.samples);

    StepControl control;
    control.rtol = options.rtol;
    control.atol = options.atol;
    control.dt_max = options.dt_max;

    Trajectory traj;
    traj.times.reserve(grid.size());
    traj.states.reserve(grid.size());
    traj.observables.reserve(grid.size());

    // The commutator only rotates phases; integrating in the rotating frame
    // leaves the step size to the dissipative time scales.
    const RotatingGenerator generator(basis, rates);
    const MatrixRhs rhs = [&](double t, const Matrix4c& rho) { return generator(t, rho); };
    // The generator maps rho^dagger to (L rho)^dagger, so the derivative of the
    // Hermitized state is the Hermitian part of the derivative.
    const StepHook hermitize = [](Matrix4c& state, Matrix4c& derivative) {
        state = 0.5 * (state + state.adjoint()).eval();
        derivative = 0.5 * (derivative + derivative.adjoint()).eval();
    };
    const SampleSink sink = [&](std::size_t, double t, const Matrix4c& state) {
        traj.push_back(t, DensityMatrix(rotate(basis, state, t, -1.0), Basis::dressed));
    };

    dormand_prince(rhs, rho0.entries(), grid, control, sink, hermitize);
    return traj;
}

bool analytic_regime(const LindbladRates& rates) {
    const double tol = 1e-12 * std::max(std::abs(rates.c_I), std::abs(rates.c_II));
    return rates.cbar_I == 0.0 && rates.cbar_II == 0.0 && rates.cbar_cr_I == 0.0 && rates.cbar_cr_II == 0.0 &&
           std::abs(rates.c_cr_I) <= tol && std::abs(rates.c_cr_II) <= tol;
}

Trajectory analytic_zero_T(const DressedBasis& basis, const LindbladRates& rates, const DensityMatrix& rho0,
                           std::span<const double> times) {
    rho0.require_basis(Basis::dressed, "analytic_zero_T");
    if (!analytic_regime(rates)) {
        throw InvalidArgument("rates",
                              "closed-form solution needs zero temperature and vanishing cross coefficients "
                              "(resonant qubits with equal flat baths)");
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || times[k] < 0.0 || (k > 0 && times[k] <= times[k - 1])) {
            throw InvalidArgument("times", "must be finite, non-negative and strictly increasing");
        }
    }

    const double cI = rates.c_I;
    const double cII = rates.c_II;
    const double cbI = rates.cbar_I;
    const double cbII = rates.cbar_II;
    const Matrix4c& r0 = rho0.entries();

    // Complex exponents of the six independent coherences, (row, col, exponent).
    struct Coherence {
        int row;
        int col;
        cd exponent;
    };
    const std::array<Coherence, 6> coherences{{
        {A, C, cd(-0.5 * (cII + 2.0 * cbI + cbII), basis.omega_II)},
        {B, D, cd(-0.5 * (2.0 * cI + cII + cbII), basis.omega_II)},
        {A, B, cd(-0.5 * (cI + cbI + 2.0 * cbII), basis.omega_I)},
        {C, D, cd(-0.5 * (cI + 2.0 * cII + cbI), basis.omega_I)},
        {A, D, cd(-0.5 * (cI + cII + cbI + cbII), basis.omega_da)},
        {B, C, cd(-0.5 * (cI + cII + cbI + cbII), basis.omega_cb)},
    }};

    const double aa0 = r0(A, A).real();
    const double bb0 = r0(B, B).real();
    const double cc0 = r0(C, C).real();
    const double dd0 = r0(D, D).real();

    Trajectory traj;
    traj.times.reserve(times.size());
    traj.states.reserve(times.size());
    traj.observables.reserve(times.size());
    for (const double t : times) {
        const double decay_I = std::exp(-cI * t);
        const double decay_II = std::exp(-cII * t);
        const double decay_d = std::exp(-(cI + cII) * t);
        // e^{-cI t} - e^{-(cI+cII) t} without cancellation, and the mirror image.
        const double feed_b = -decay_I * std::expm1(-cII * t);
        const double feed_c = -decay_II * std::expm1(-cI * t);

        const double dd = dd0 * decay_d;
        const double bb = bb0 * decay_I + dd0 * feed_b;
        const double cc = cc0 * decay_II + dd0 * feed_c;
        // Normalization fixes the ground population.
        const double aa = aa0 + (bb0 - bb) + (cc0 - cc) + (dd0 - dd);

        Matrix4c rho = Matrix4c::Zero();
        rho(A, A) = aa;
        rho(B, B) = bb;
        rho(C, C) = cc;
        rho(D, D) = dd;
        for (const auto& coh : coherences) {
            const cd value = std::exp(coh.exponent * t) * r0(coh.row, coh.col);
            rho(coh.row, coh.col) = value;
            rho(coh.col, coh.row) = std::conj(value);
        }
        traj.push_back(t, DensityMatrix(rho, Basis::dressed));
    }
    return traj;
}

std::array<double, 4> stationary_state(const LindbladRates& rates) {
    const double total_I = rates.c_I + rates.cbar_I;
    const double total_II = rates.c_II + rates.cbar_II;
    if (!(total_I > 0.0) || !(total_II > 0.0)) {
        throw InvalidArgument("rates", "no unique stationary state: a transition channel has zero total rate");
    }
    const double denominator = total_I * total_II;
    return {rates.c_I * rates.c_II / denominator, rates.cbar_I * rates.c_II / denominator,
            rates.c_I * rates.cbar_II / denominator, rates.cbar_I * rates.cbar_II / denominator};
}

DensityMatrix stationary_density_matrix(const LindbladRates& rates) {
    const auto pops = stationary_state(rates);
    Matrix4c rho = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k) {
        rho(k, k) = pops[k];
    }
    return DensityMatrix(rho, Basis::dressed);
}

double default_horizon(const LindbladRates& rates) {
    double smallest = std::numeric_limits<double>::infinity();
    for (const double rate : {rates.c_I, rates.c_II}) {
        if (rate > 0.0) {
            smallest = std::min(smallest, rate);
        }
    }
    if (!std::isfinite(smallest)) {
        throw InvalidArgument("rates", "all decay rates are zero; no natural time horizon");
    }
    return 10.0 / smallest;
}

bool weak_damping_violated(const DressedBasis& basis, const LindbladRates& rates) {
    return rates.max_rate() > 0.1 * basis.omega_I;
}

} // namespace qpair
