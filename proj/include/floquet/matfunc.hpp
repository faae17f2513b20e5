// matfunc.hpp — Matrix exponential (Padé 13 + scaling/squaring), principal
// matrix logarithm (Schur + inverse scaling/squaring), integer matrix powers.

#pragma once

#include "floquet/operator.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace floquet {

struct BranchCutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double norm1(const Matrix& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Diagonal Padé order 13 evaluated at A, returns p(A)/p(-A) via one solve.
inline Matrix pade13(const Matrix& a) {
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                          b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                     b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace detail

// exp(scalar · a). Norm-based scaling with the Padé-13 kernel; Hermitian
// inputs whose scaling exponent would exceed 30 go through an
// eigendecomposition instead.
inline Matrix matexp(const Matrix& a, Complex scalar = Complex(1.0, 0.0)) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matexp: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return Matrix(0, 0);
    Matrix x = scalar * a;
    if (!all_finite(x)) throw std::runtime_error("matexp: non-finite input");

    constexpr double theta13 = 5.371920351148152;
    const double nrm = detail::norm1(x);
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));

    if (s > 30 && hermiticity_defect(a) <= 1e-12 * a.norm()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a);
        if (es.info() != Eigen::Success) throw std::runtime_error("matexp: eigensolver failed");
        Vector ph(n);
        for (Index i = 0; i < n; ++i) ph[i] = std::exp(scalar * es.eigenvalues()[i]);
        return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
    if (s > 60) throw std::runtime_error("matexp: scaling heuristic overflow");

    x /= std::pow(2.0, s);
    Matrix e = detail::pade13(x);
    for (int i = 0; i < s; ++i) e = e * e;
    if (!all_finite(e)) throw std::runtime_error("matexp: overflow during squaring");
    return e;
}

inline Operator matexp(const Operator& a, Complex scalar = Complex(1.0, 0.0)) {
    return Operator(matexp(a.mat, scalar), a.basis_label);
}

namespace detail {

// Principal square root of an upper-triangular matrix (Björck–Hammarling).
inline Matrix sqrtm_triangular(const Matrix& t) {
    const Index n = t.rows();
    Matrix r = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) r(i, i) = std::sqrt(t(i, i));
    for (Index d = 1; d < n; ++d) {
        for (Index i = 0; i + d < n; ++i) {
            const Index j = i + d;
            Complex s = t(i, j);
            for (Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
            const Complex denom = r(i, i) + r(j, j);
            if (std::abs(denom) < 1e-300) throw std::runtime_error("sqrtm: singular diagonal pair");
            r(i, j) = s / denom;
        }
    }
    return r;
}

// log(I + X) by the 8-node Gauss–Legendre Padé form, valid for ‖X‖ ≲ 0.25.
inline Matrix log_near_identity(const Matrix& x) {
    static const double nodes[] = {0.01985507175123186, 0.10166676129318664,
                                   0.2372337950418355,  0.40828267875217505,
                                   0.59171732124782495, 0.7627662049581645,
                                   0.89833323870681336, 0.98014492824876814};
    static const double weights[] = {0.05061426814518813, 0.11119051722668724,
                                     0.15685332293894364, 0.18134189168918099,
                                     0.18134189168918099, 0.15685332293894364,
                                     0.11119051722668724, 0.05061426814518813};
    const Index n = x.rows();
    Matrix out = Matrix::Zero(n, n);
    const Matrix id = Matrix::Identity(n, n);
    for (int i = 0; i < 8; ++i) {
        out += weights[i] * ((id + nodes[i] * x).partialPivLu().solve(x));
    }
    return out;
}

} // namespace detail

// Principal matrix logarithm. Throws BranchCutError when an eigenvalue sits
// within cut_tol (in argument) of the negative real axis, or at zero.
inline Matrix matlog_principal(const Matrix& a, double cut_tol = 1e-6) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matlog: matrix must be square");
    Eigen::ComplexSchur<Matrix> schur(a);
    if (schur.info() != Eigen::Success) throw std::runtime_error("matlog: Schur failed");
    Matrix t = schur.matrixT();
    const Matrix q = schur.matrixU();
    const Index n = t.rows();

    for (Index i = 0; i < n; ++i) {
        const Complex lam = t(i, i);
        if (std::abs(lam) < 1e-300) throw BranchCutError("matlog: zero eigenvalue");
        const double pi = 3.14159265358979323846;
        if (pi - std::abs(std::arg(lam)) < cut_tol) {
            throw BranchCutError("matlog: eigenvalue within tolerance of the branch cut");
        }
    }

    int s = 0;
    Matrix r = t;
    while ((r - Matrix::Identity(n, n)).norm() > 0.25 && s < 60) {
        r = detail::sqrtm_triangular(r);
        ++s;
    }
    if (s >= 60) throw std::runtime_error("matlog: inverse scaling did not converge");
    Matrix lg = detail::log_near_identity(r - Matrix::Identity(n, n));
    lg *= std::pow(2.0, s);
    return q * lg * q.adjoint();
}

// a^q for q ≥ 0 by binary powering; negative q uses the adjoint (valid for
// unitary a, which is the only use here).
inline Matrix matpow(const Matrix& a, long long q) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matpow: matrix must be square");
    if (q < 0) return Matrix(matpow(a, -q).adjoint());
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (q > 0) {
        if (q & 1) result = result * base;
        base = base * base;
        q >>= 1;
    }
    return result;
}

inline double unitarity_defect(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

} // namespace floquet
