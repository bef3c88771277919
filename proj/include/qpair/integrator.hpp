// Embedded Dormand-Prince 5(4) stepper for 4x4 complex matrix ODEs

#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "qpair/density_matrix.hpp"

namespace qpair {

struct StepControl {
    double rtol{1e-10};
    double atol{1e-12};
    double dt_max{0.0};          // <= 0 disables the cap
    double min_step_ratio{1e-12}; // failure when dt < min_step_ratio * span
};

struct IntegratorStats {
    std::size_t accepted{0};
    std::size_t rejected{0};
    std::size_t rhs_evaluations{0};
};

using MatrixRhs = std::function<Matrix4c(double t, const Matrix4c& y)>;
// Called after each accepted step; may project the state (e.g. Hermitize) and
// must return the derivative of the projected state consistently.
using StepHook = std::function<void(Matrix4c& state, Matrix4c& derivative)>;
using SampleSink = std::function<void(std::size_t index, double t, const Matrix4c& state)>;

// Integrates y' = rhs(t, y) from out_times.front() and
// reports the state at every entry of out_times (strictly increasing). Steps
// land exactly on the output times.
IntegratorStats dormand_prince(const MatrixRhs& rhs, const Matrix4c& y0,
                               std::span<const double> out_times, const StepControl& control,
                               const SampleSink& sink, const StepHook& hook = {});

} // namespace qpair
