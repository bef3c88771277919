// Cyclic Jacobi eigensolver for small real symmetric matrices

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpair/errors.hpp"
#include "qpair/model.hpp"

namespace qpair {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix4r& A) {
    double sum = 0.0;
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
            sum += A(p, q) * A(p, q);
        }
    }
    return std::sqrt(2.0 * sum);
}

// Rotation in the (p, q) plane that annihilates A(p, q).
void rotate(Matrix4r& A, Matrix4r& V, int p, int q) {
    const double apq = A(p, q);
    if (apq == 0.0) {
        return;
    }
    const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (int k = 0; k < 4; ++k) {
        const double akp = A(k, p);
        const double akq = A(k, q);
        A(k, p) = c * akp - s * akq;
        A(k, q) = s * akp + c * akq;
    }
    for (int k = 0; k < 4; ++k) {
        const double apk = A(p, k);
        const double aqk = A(q, k);
        A(p, k) = c * apk - s * aqk;
        A(q, k) = s * apk + c * aqk;
    }
    A(p, q) = A(q, p) = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double vkp = V(k, p);
        const double vkq = V(k, q);
        V(k, p) = c * vkp - s * vkq;
        V(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

Eigensystem brute_force_eigensystem(const Matrix4r& H) {
    if (!H.allFinite()) {
        throw InvalidArgument("H", "matrix has non-finite entries");
    }
    if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("H", "matrix is not symmetric");
    }

    Matrix4r A = 0.5 * (H + H.transpose());
    Matrix4r V = Matrix4r::Identity();
    const double scale = A.norm();

    int sweep = 0;
    while (off_diagonal_norm(A) > 1e-18 * scale) {
        if (++sweep > kMaxSweeps) {
            throw NumericFailure("Jacobi eigensolver did not converge");
        }
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                rotate(A, V, p, q);
            }
        }
    }

    std::array<int, 4> order{};
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return A(i, i) < A(j, j); });

    Eigensystem result;
    for (int k = 0; k < 4; ++k) {
        result.values[k] = A(order[k], order[k]);
        result.vectors.col(k) = V.col(order[k]);
    }
    return result;
}

} // namespace qpair
