// Hamiltonian, closed-form diagonalization, basis change

#include "qpair/model.hpp"

#include <cmath>
#include <numbers>

#include "qpair/errors.hpp"

namespace qpair {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) {
        throw InvalidArgument(field, "must be finite");
    }
}

} // namespace

void validate(const ModelParams& params) {
    require_finite(params.omega1, "omega1");
    require_finite(params.omega2, "omega2");
    require_finite(params.lambda, "lambda");
    if (params.omega1 <= 0.0) {
        throw InvalidArgument("omega1", "must be > 0");
    }
    if (params.omega2 < params.omega1) {
        throw InvalidArgument("omega2", "must be >= omega1 (label the qubits so that omega2 >= omega1)");
    }
    if (params.lambda < 0.0) {
        throw InvalidArgument("lambda", "must be >= 0");
    }
    validate(params.bath1, "bath1");
    validate(params.bath2, "bath2");
}

Matrix4r hamiltonian_matrix(const ModelParams& params) {
    validate(params);
    Matrix4r H = Matrix4r::Zero();
    H(0, 0) = 0.0;
    H(1, 1) = params.omega2;
    H(2, 2) = params.omega1;
    H(3, 3) = params.omega1 + params.omega2;
    // sx(1) sx(2) flips both qubits: |00> <-> |11> and |01> <-> |10>.
    const double g = 0.5 * params.lambda;
    H(0, 3) = H(3, 0) = g;
    H(1, 2) = H(2, 1) = g;
    return H;
}

DressedBasis diagonalize(const ModelParams& params) {
    validate(params);

    const double sum = params.omega1 + params.omega2;
    const double diff = params.omega2 - params.omega1;
    const double lambda = params.lambda;
    const double r_sum = std::hypot(sum, lambda);
    const double r_diff = std::hypot(diff, lambda);
    const double mean = 0.5 * sum;

    DressedBasis basis;
    basis.energies = {mean - 0.5 * r_sum, mean - 0.5 * r_diff, mean + 0.5 * r_diff, mean + 0.5 * r_sum};

    basis.theta_I = std::atan2(lambda, sum);
    basis.theta_II = (lambda == 0.0 && diff == 0.0) ? 0.5 * std::numbers::pi : std::atan2(lambda, diff);
    basis.half_I = {std::cos(0.5 * basis.theta_I), std::sin(0.5 * basis.theta_I)};
    basis.half_II = {std::cos(0.5 * basis.theta_II), std::sin(0.5 * basis.theta_II)};

    // (r_sum - r_diff) / 2 rewritten without the cancellation.
    basis.omega_I = 2.0 * params.omega1 * params.omega2 / (r_sum + r_diff);
    basis.omega_II = 0.5 * (r_sum + r_diff);
    basis.omega_da = r_sum;
    basis.omega_cb = r_diff;

    const auto [cI, sI] = basis.half_I;
    const auto [cII, sII] = basis.half_II;
    Matrix4r& U = basis.U;
    U.setZero();
    // |a> = cos|00> - sin|11>
    U(0, 0) = cI;
    U(3, 0) = -sI;
    // |b> = cos|10> - sin|01>
    U(2, 1) = cII;
    U(1, 1) = -sII;
    // |c> = sin|10> + cos|01>
    U(2, 2) = sII;
    U(1, 2) = cII;
    // |d> = sin|00> + cos|11>
    U(0, 3) = sI;
    U(3, 3) = cI;
    return basis;
}

DensityMatrix dressed_to_computational(const DressedBasis& basis, const DensityMatrix& rho) {
    rho.require_basis(Basis::dressed, "dressed_to_computational");
    const Matrix4c U = basis.U.cast<std::complex<double>>();
    return DensityMatrix(U * rho.entries() * U.transpose(), Basis::computational);
}

DensityMatrix computational_to_dressed(const DressedBasis& basis, const DensityMatrix& rho) {
    rho.require_basis(Basis::computational, "computational_to_dressed");
    const Matrix4c U = basis.U.cast<std::complex<double>>();
    return DensityMatrix(U.transpose() * rho.entries() * U, Basis::dressed);
}

} // namespace qpair
