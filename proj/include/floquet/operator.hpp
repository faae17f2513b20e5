// operator.hpp — Dense complex operators with the structural predicates
// (hermiticity, block bandwidth, conjugation compatibility) used throughout.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace floquet {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;
using Index   = Eigen::Index;

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

// ------------------------------- Operator -----------------------------------

// A finite square operator in a named basis.
struct Operator {
    Matrix mat;
    std::string basis_label;

    Operator() = default;
    explicit Operator(Matrix m, std::string basis = "")
        : mat(std::move(m)), basis_label(std::move(basis)) {
        if (mat.rows() != mat.cols()) {
            throw std::invalid_argument("Operator: matrix must be square");
        }
        if (!all_finite(mat)) {
            throw std::invalid_argument("Operator: entries must be finite");
        }
    }

    Index dim() const { return mat.rows(); }
    double norm() const { return mat.norm(); }

    static Operator identity(Index n, std::string basis = "") {
        return Operator(Matrix::Identity(n, n), std::move(basis));
    }
    static Operator zero(Index n, std::string basis = "") {
        return Operator(Matrix::Zero(n, n), std::move(basis));
    }
};

inline Operator adjoint(const Operator& a) {
    return Operator(a.mat.adjoint(), a.basis_label);
}

inline Operator commutator(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("commutator: dimension mismatch");
    }
    return Operator(a.mat * b.mat - b.mat * a.mat, a.basis_label);
}

// ‖a − a†‖_F; zero iff a is Hermitian.
inline double hermiticity_defect(const Operator& a) {
    return (a.mat - a.mat.adjoint()).norm();
}
inline double hermiticity_defect(const Matrix& a) {
    return (a - Matrix(a.adjoint())).norm();
}

// ----------------------------- BlockPartition -------------------------------

// Contiguous grouping of basis indices, standing in for the spectral
// projections E_0([α_j, β_j]) of the reference Hamiltonian.
struct BlockPartition {
    std::vector<int> block_sizes;
    std::vector<std::pair<double, double>> labels; // optional interval endpoints

    int total() const {
        int s = 0;
        for (int b : block_sizes) s += b;
        return s;
    }
    int count() const { return static_cast<int>(block_sizes.size()); }

    void validate(Index dim) const {
        for (int b : block_sizes) {
            if (b <= 0) throw std::invalid_argument("BlockPartition: block sizes must be positive");
        }
        if (total() != dim) {
            throw std::invalid_argument("BlockPartition: block sizes must sum to operator dim");
        }
        if (!labels.empty() && labels.size() != block_sizes.size()) {
            throw std::invalid_argument("BlockPartition: label count must match block count");
        }
    }

    static BlockPartition unit_blocks(Index dim) {
        BlockPartition p;
        p.block_sizes.assign(static_cast<std::size_t>(dim), 1);
        return p;
    }

    std::vector<int> offsets() const {
        std::vector<int> off(block_sizes.size() + 1, 0);
        for (std::size_t i = 0; i < block_sizes.size(); ++i) off[i + 1] = off[i] + block_sizes[i];
        return off;
    }
};

// Smallest K such that every block pair (i, j) with |i − j| > K has
// Frobenius norm at most 1e-13 · ‖a‖_F.
inline int bandwidth(const Operator& a, const BlockPartition& part) {
    part.validate(a.dim());
    const double tol = 1e-13 * a.mat.norm();
    const auto off = part.offsets();
    const int nb = part.count();
    int k = 0;
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            if (std::abs(i - j) <= k) continue;
            const double bn =
                a.mat.block(off[i], off[j], part.block_sizes[i], part.block_sizes[j]).norm();
            if (bn > tol) k = std::abs(i - j);
        }
    }
    return k;
}

// ------------------------------ Conjugation ---------------------------------

// Antiunitary involution J: complex-conjugate components, permute, multiply
// per-index phases. JJ = 1 requires the permutation to be an involution and
// phase_i · conj(phase_{perm(i)}) = 1.
struct Conjugation {
    std::vector<int> permutation;
    Vector phases;

    Index dim() const { return static_cast<Index>(permutation.size()); }

    void validate() const {
        const Index n = dim();
        if (phases.size() != n) {
            throw std::invalid_argument("Conjugation: permutation/phases size mismatch");
        }
        for (Index i = 0; i < n; ++i) {
            const int p = permutation[static_cast<std::size_t>(i)];
            if (p < 0 || p >= n) throw std::invalid_argument("Conjugation: bad permutation entry");
            if (permutation[static_cast<std::size_t>(p)] != i) {
                throw std::invalid_argument("Conjugation: permutation must be an involution");
            }
            const Complex prod = phases[i] * std::conj(phases[p]);
            if (std::abs(prod - 1.0) > 1e-12) {
                throw std::invalid_argument("Conjugation: phases incompatible with JJ = 1");
            }
        }
    }

    Vector apply(const Vector& x) const {
        const Index n = dim();
        if (x.size() != n) throw std::invalid_argument("Conjugation: vector size mismatch");
        Vector y(n);
        for (Index i = 0; i < n; ++i) {
            y[i] = phases[i] * std::conj(x[permutation[static_cast<std::size_t>(i)]]);
        }
        return y;
    }

    // J A J as a linear operator: (JAJ)_{ij} = ph_i conj(A_{perm(i),perm(j)}) conj(ph_j).
    Matrix similarity(const Matrix& a) const {
        const Index n = dim();
        if (a.rows() != n || a.cols() != n) {
            throw std::invalid_argument("Conjugation: operator dim mismatch");
        }
        Matrix out(n, n);
        for (Index i = 0; i < n; ++i) {
            const int pi = permutation[static_cast<std::size_t>(i)];
            for (Index j = 0; j < n; ++j) {
                const int pj = permutation[static_cast<std::size_t>(j)];
                out(i, j) = phases[i] * std::conj(a(pi, pj)) * std::conj(phases[j]);
            }
        }
        return out;
    }

    // Plain entrywise conjugation.
    static Conjugation plain(Index n) {
        Conjugation j;
        j.permutation.resize(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) j.permutation[static_cast<std::size_t>(i)] = static_cast<int>(i);
        j.phases = Vector::Ones(n);
        return j;
    }

    // Entrywise conjugation composed with a diagonal phase signature.
    static Conjugation with_phases(Vector ph) {
        Conjugation j = plain(ph.size());
        j.phases = std::move(ph);
        return j;
    }
};

inline double conjugation_defect(const Operator& a, const Conjugation& j) {
    return (j.similarity(a.mat) - a.mat).norm();
}

// --------------------------- Index-set restriction ---------------------------

inline Matrix restrict_to(const Matrix& a, const std::vector<int>& idx) {
    const Index n = static_cast<Index>(idx.size());
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) out(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    return out;
}

} // namespace floquet
