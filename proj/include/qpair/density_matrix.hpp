// 4x4 two-qubit density matrix tagged with its basis

#pragma once

#include <Eigen/Dense>

namespace qpair {

using Matrix4c = Eigen::Matrix4cd;
using Matrix4r = Eigen::Matrix4d;

// Dressed order is (a, b, c, d); computational order is (|00>, |01>, |10>, |11>),
// with |ij> = |i>_1 (x) |j>_2.
enum class Basis { dressed, computational };

const char* to_string(Basis basis);

class DensityMatrix {
public:
    DensityMatrix(const Matrix4c& entries, Basis basis)
        : entries_(entries), basis_(basis) {}

    static DensityMatrix pure(const Eigen::Vector4cd& psi, Basis basis);
    static DensityMatrix maximally_mixed(Basis basis);

    const Matrix4c& entries() const { return entries_; }
    Basis basis() const { return basis_; }

    std::complex<double> operator()(int row, int col) const { return entries_(row, col); }

    double trace_error() const;        // Re tr(rho) - 1
    double hermiticity_error() const;  // max |rho - rho^dagger|
    double min_eigenvalue() const;
    double purity() const;             // tr(rho^2)

    // Throws InvalidArgument unless Hermitian to 1e-12, unit trace to 1e-10 and
    // eigenvalues >= -1e-10.
    void check_physical() const;

    // Throws BasisMismatch when the tag differs from `expected`.
    void require_basis(Basis expected, const char* operation) const;

private:
    Matrix4c entries_;
    Basis basis_;
};

} // namespace qpair
