// Dormand-Prince 5(4) with FSAL and exact landing on output times

#include "qpair/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "qpair/errors.hpp"

namespace qpair {

namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
// Fifth minus embedded fourth order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

// Modulus without hypot's overflow guard; entries here are far from overflow.
double modulus(std::complex<double> z) {
    return std::sqrt(std::norm(z));
}

double scaled_norm(const Matrix4c& v, const Matrix4c& y0, const Matrix4c& y1, const StepControl& control) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double scale =
                control.atol + control.rtol * std::max(modulus(y0(i, j)), modulus(y1(i, j)));
            worst = std::max(worst, modulus(v(i, j)) / scale);
        }
    }
    return worst;
}

// Standard initial step heuristic for an order-5 method.
double initial_step(const MatrixRhs& rhs, double t0, const Matrix4c& y0, const Matrix4c& f0,
                    const StepControl& control, double span) {
    const double d0 = scaled_norm(y0, y0, y0, control);
    const double d1 = scaled_norm(f0, y0, y0, control);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const Matrix4c y1 = y0 + h0 * f0;
    const Matrix4c f1 = rhs(t0 + h0, y1);
    const double d2 = scaled_norm(f1 - f0, y0, y0, control) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    return std::min(100.0 * h0, h1);
}

} // namespace

IntegratorStats dormand_prince(const MatrixRhs& rhs, const Matrix4c& y0, std::span<const double> out_times,
                               const StepControl& control, const SampleSink& sink, const StepHook& hook) {
    IntegratorStats stats;
    if (out_times.empty()) {
        return stats;
    }
    for (std::size_t k = 1; k < out_times.size(); ++k) {
        if (!(out_times[k] > out_times[k - 1])) {
            throw InvalidArgument("out_times", "must be strictly increasing");
        }
    }
    if (!y0.allFinite()) {
        throw NumericFailure("initial state is not finite");
    }

    const double span = out_times.back() - out_times.front();
    const double min_step = control.min_step_ratio * span;
    const double dt_max = control.dt_max > 0.0 ? control.dt_max : span;

    double t = out_times.front();
    Matrix4c y = y0;
    Matrix4c k1 = rhs(t, y);
    ++stats.rhs_evaluations;
    sink(0, t, y);
    if (out_times.size() == 1) {
        return stats;
    }

    double h = std::min(initial_step(rhs, t, y, k1, control, span), dt_max);
    ++stats.rhs_evaluations;

    for (std::size_t index = 1; index < out_times.size(); ++index) {
        const double target = out_times[index];
        while (t < target) {
            double step = std::min(h, dt_max);
            bool lands = false;
            if (t + step >= target - 1e-13 * std::abs(target)) {
                step = target - t;
                lands = true;
            }

            const Matrix4c k2 = rhs(t + c2 * step, y + step * (a21 * k1));
            const Matrix4c k3 = rhs(t + c3 * step, y + step * (a31 * k1 + a32 * k2));
            const Matrix4c k4 = rhs(t + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            const Matrix4c k5 = rhs(t + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Matrix4c k6 = rhs(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Matrix4c y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Matrix4c k7 = rhs(lands ? target : t + step, y_new);
            stats.rhs_evaluations += 6;

            const Matrix4c error = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double err = scaled_norm(error, y, y_new, control);

            if (std::isfinite(err) && err <= 1.0) {
                ++stats.accepted;
                t = lands ? target : t + step;
                y = y_new;
                k1 = std::move(k7);
                if (hook) {
                    hook(y, k1);
                }
                if (!y.allFinite()) {
                    throw NumericFailure("state became non-finite at t = " + std::to_string(t));
                }
                const double factor =
                    err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
                // A step shortened to land on an output time says little about
                // the natural step size, so never let it shrink the proposal.
                h = lands ? std::max(h, step * factor) : step * factor;
            } else {
                ++stats.rejected;
                const double factor = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2))
                                                         : kMinFactor;
                h = step * factor;
                if (h < min_step) {
                    throw NumericFailure("step size underflow at t = " + std::to_string(t) +
                                         " (problem too stiff for the requested tolerance)");
                }
            }
        }
        sink(index, t, y);
    }
    return stats;
}

} // namespace qpair
