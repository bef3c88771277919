// Initial states in the dressed basis and the Wootters concurrence

#include "qpair/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "qpair/errors.hpp"

namespace qpair {

namespace {

using cd = std::complex<double>;

// sy (x) sy in the computational order: anti-diagonal (-1, 1, 1, -1).
Matrix4c spin_flip() {
    Matrix4c yy = Matrix4c::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

constexpr double kClampNegative = 1e-10;
constexpr double kInvalidState = 1e-8;
// Eigenvalues of rho and of R below this are rounding noise (both spectra lie in [0, 1]).
constexpr double kRankFloor = 64 * std::numeric_limits<double>::epsilon();

} // namespace

const char* to_string(StateFamily family) {
    return family == StateFamily::one_excitation ? "one_excitation" : "two_excitation";
}

DensityMatrix build_initial(const InitialStateSpec& spec, const DressedBasis& basis) {
    if (!std::isfinite(spec.p) || spec.p < 0.0 || spec.p > 1.0) {
        throw InvalidArgument("initial.p", "must lie in [0, 1]");
    }
    if (!std::isfinite(spec.phi)) {
        throw InvalidArgument("initial.phi", "must be finite");
    }
    const double sp = std::sqrt(spec.p);
    const double sq = std::sqrt(1.0 - spec.p);
    const cd phase = std::polar(1.0, spec.phi);

    // Dressed-basis amplitudes (a, b, c, d) of the pure state.
    Eigen::Vector4cd amp = Eigen::Vector4cd::Zero();
    if (spec.family == StateFamily::one_excitation) {
        const auto [c2, s2] = basis.half_II;
        amp(1) = phase * sq * c2 - sp * s2;
        amp(2) = phase * sq * s2 + sp * c2;
    } else {
        const auto [c1, s1] = basis.half_I;
        amp(0) = sp * c1 - phase * sq * s1;
        amp(3) = sp * s1 + phase * sq * c1;
    }
    return DensityMatrix(amp * amp.adjoint(), Basis::dressed);
}

double concurrence(const DensityMatrix& rho) {
    rho.require_basis(Basis::computational, "concurrence");
    const Matrix4c& m = rho.entries();
    if (!m.allFinite()) {
        throw InvalidArgument("rho", "non-finite entries");
    }
    if (rho.hermiticity_error() > kInvalidState) {
        throw InvalidArgument("rho", "not Hermitian");
    }
    if (std::abs(rho.trace_error()) > kInvalidState) {
        throw InvalidArgument("rho", "trace differs from 1 by " + std::to_string(rho.trace_error()));
    }

    const Matrix4c herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> rho_eig(herm);
    const Eigen::Vector4d w = rho_eig.eigenvalues();
    if (w.minCoeff() < -kInvalidState) {
        throw InvalidArgument("rho", "not positive semidefinite (eigenvalue " + std::to_string(w.minCoeff()) + ")");
    }
    const Eigen::Vector4d sqrt_w = w.unaryExpr([](double x) { return x > kRankFloor ? std::sqrt(x) : 0.0; });
    const Matrix4c& V = rho_eig.eigenvectors();
    const Matrix4c sqrt_rho = V * sqrt_w.cast<cd>().asDiagonal() * V.adjoint();

    const Matrix4c yy = spin_flip();
    const Matrix4c flipped = yy * herm.conjugate() * yy;
    // sqrt(rho) rho~ sqrt(rho) is Hermitian and isospectral to rho rho~.
    Matrix4c r = sqrt_rho * flipped * sqrt_rho;
    r = 0.5 * (r + r.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix4c> r_eig(r, Eigen::EigenvaluesOnly);

    std::array<double, 4> roots{};
    for (int k = 0; k < 4; ++k) {
        const double lambda = r_eig.eigenvalues()(k);
        if (lambda < -kClampNegative) {
            throw InvalidArgument("rho", "spin-flip product has eigenvalue " + std::to_string(lambda));
        }
        roots[k] = lambda > kRankFloor ? std::sqrt(lambda) : 0.0;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    const double c = roots[0] - roots[1] - roots[2] - roots[3];
    return std::clamp(c, 0.0, 1.0);
}

std::vector<double> concurrence_series(Trajectory& traj, const DressedBasis& basis) {
    std::vector<double> values;
    values.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double c = concurrence(dressed_to_computational(basis, traj.states[k]));
        traj.observables[k].concurrence = c;
        values.push_back(c);
    }
    return values;
}

} // namespace qpair
