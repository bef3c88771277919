// density_matrix.cpp

#include "qpair/density_matrix.hpp"

#include <cmath>
#include <string>

#include "qpair/errors.hpp"

namespace qpair {

const char* to_string(Basis basis) {
    return basis == Basis::dressed ? "dressed" : "computational";
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector4cd& psi, Basis basis) {
    const double norm = psi.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("psi", "state vector must have finite nonzero norm");
    }
    const Eigen::Vector4cd v = psi / norm;
    return DensityMatrix(v * v.adjoint(), basis);
}

DensityMatrix DensityMatrix::maximally_mixed(Basis basis) {
    return DensityMatrix(Matrix4c::Identity() * 0.25, basis);
}

double DensityMatrix::trace_error() const {
    return entries_.trace().real() - 1.0;
}

double DensityMatrix::hermiticity_error() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix4c herm = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const {
    return (entries_ * entries_).trace().real();
}

void DensityMatrix::check_physical() const {
    if (!entries_.allFinite()) {
        throw InvalidArgument("rho", "non-finite entries");
    }
    if (hermiticity_error() > 1e-12) {
        throw InvalidArgument("rho", "not Hermitian (defect " + std::to_string(hermiticity_error()) + ")");
    }
    if (std::abs(trace_error()) > 1e-10) {
        throw InvalidArgument("rho", "trace differs from 1 by " + std::to_string(trace_error()));
    }
    if (min_eigenvalue() < -1e-10) {
        throw InvalidArgument("rho", "negative eigenvalue " + std::to_string(min_eigenvalue()));
    }
}

void DensityMatrix::require_basis(Basis expected, const char* operation) const {
    if (basis_ != expected) {
        throw BasisMismatch(std::string(operation) + " expects a " + to_string(expected) +
                            "-basis density matrix, got " + to_string(basis_));
    }
}

} // namespace qpair
