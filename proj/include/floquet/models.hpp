// models.hpp — Concrete model builders: quantum Rabi in the interaction
// picture, periodically driven harmonic oscillator, and a seeded random
// banded family used as the brute-force verification class.

#pragma once

#include "floquet/operator.hpp"
#include "floquet/trigpoly.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace floquet {

enum class ModelVariant { Rabi, DrivenHO, RandomBanded };

struct ModelSpec {
    ModelVariant variant = ModelVariant::Rabi;
    // Rabi
    double g = 0.5;
    double delta = 0.0;
    double omega = 1.0;      // also the oscillator frequency for DrivenHO
    int fock_dim = 40;
    // DrivenHO
    std::vector<double> sine_coeffs = {1.0};
    // RandomBanded
    int dim = 16;
    int bandwidth = 2;
    int num_modes = 2;
    std::uint64_t seed = 42;
    double scale = 1.0;

    std::string name() const {
        switch (variant) {
            case ModelVariant::Rabi: return "rabi";
            case ModelVariant::DrivenHO: return "driven_ho";
            case ModelVariant::RandomBanded: return "random_banded";
        }
        return "?";
    }
};

// A built model: the 1-periodic Hamiltonian plus the structure the property
// checks need (spectral partition, conjugation, coupling bandwidth, Fock
// levels for interior-block restriction).
struct Model {
    ModelSpec spec;
    FourierOp h;
    BlockPartition partition;
    std::optional<Conjugation> conjugation;
    int coupling_bandwidth = 0;
    std::vector<int> fock_level; // per basis index; empty when not truncated

    std::string name() const { return spec.name(); }

    // Indices untouched by Fock truncation for an order-l coefficient:
    // l+1 operator factors move at most 2 Fock levels each in these models.
    std::vector<int> interior_indices(int order) const {
        std::vector<int> idx;
        if (fock_level.empty()) {
            for (Index i = 0; i < h.dim; ++i) idx.push_back(static_cast<int>(i));
            return idx;
        }
        const int cutoff = spec.fock_dim - 2 * (order + 1);
        for (std::size_t i = 0; i < fock_level.size(); ++i) {
            if (fock_level[i] < cutoff) idx.push_back(static_cast<int>(i));
        }
        if (idx.empty()) throw std::invalid_argument("interior_indices: truncation margin swallows everything");
        return idx;
    }

    // Low-excitation probe state: ground/vacuum-adjacent, so truncation
    // leakage stays negligible during propagation.
    Vector default_state() const {
        Vector psi = Vector::Zero(h.dim);
        psi[0] = 1.0;
        return psi;
    }
};

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Matrix annihilation(int fock_dim) {
    Matrix a = Matrix::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix permute(const Matrix& m, const std::vector<int>& order) {
    const Index n = m.rows();
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            out(i, j) = m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

// Deterministic uniform in [-s, s] from raw engine output; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform_sym(std::mt19937_64& rng, double s) {
    const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    return s * (2.0 * u - 1.0);
}

} // namespace detail

// Interaction-picture quantum Rabi model on C² ⊗ Fock(fock_dim), emitted in
// the basis ordered by H_0 = π(σ_z/2 + N) energy so that the spectral
// partition blocks are contiguous. Modes:
//   n=0: g(σ₋⊗a† + σ₊⊗a) + (Δ/2)σ_z⊗1,  n=+1: g σ₊⊗a†,  n=−1: g σ₋⊗a.
// Scanning the period T corresponds to scanning ω = π/T.
inline Model build_rabi(const ModelSpec& spec) {
    if (spec.fock_dim < 8) throw std::invalid_argument("build_rabi: fock_dim must be >= 8");
    const int F = spec.fock_dim;
    const Matrix a = detail::annihilation(F);
    const Matrix ad = a.adjoint();
    const Matrix idb = Matrix::Identity(F, F);
    Matrix sz(2, 2), sp(2, 2), sm(2, 2);
    sz << 1, 0, 0, -1;
    sp << 0, 1, 0, 0;
    sm << 0, 0, 1, 0;

    // Energy order: v₋φ₀, then pairs {v₊φᵢ, v₋φᵢ₊₁}, finally v₊φ_{F−1}.
    std::vector<int> order;
    std::vector<int> level;
    order.push_back(F);
    level.push_back(0);
    for (int i = 0; i + 1 < F; ++i) {
        order.push_back(i);
        level.push_back(i);
        order.push_back(F + i + 1);
        level.push_back(i + 1);
    }
    order.push_back(F - 1);
    level.push_back(F - 1);

    Model m;
    m.spec = spec;
    m.h.dim = 2 * F;
    m.h.basis_label = "rabi-energy";
    m.h.insert_mode(0, detail::permute(
        spec.g * (detail::kron(sm, ad) + detail::kron(sp, a)) +
        0.5 * spec.delta * detail::kron(sz, idb), order));
    m.h.insert_mode(1, detail::permute(spec.g * detail::kron(sp, ad), order));
    m.h.insert_mode(-1, detail::permute(spec.g * detail::kron(sm, a), order));

    m.partition.block_sizes.assign(static_cast<std::size_t>(F) + 1, 2);
    m.partition.block_sizes.front() = 1;
    m.partition.block_sizes.back() = 1;
    const double pi = 3.14159265358979323846;
    for (int i = -1; i < F; ++i) {
        m.partition.labels.emplace_back(pi * (i + 1.0 / 3.0), pi * (i + 2.0 / 3.0));
    }
    m.conjugation = Conjugation::plain(2 * F); // real matrix elements in this basis
    m.coupling_bandwidth = 2;
    m.fock_level = level;
    return m;
}

// Driven harmonic oscillator H(t) = ω(N + 1/2) + f(t)(a + a†) with f a real,
// antisymmetric 1-periodic sine series; modes H_{±m} = ∓(i/2)·amp_m·(a + a†).
inline Model build_driven_ho(const ModelSpec& spec) {
    if (spec.fock_dim < 8) throw std::invalid_argument("build_driven_ho: fock_dim must be >= 8");
    const int F = spec.fock_dim;
    const Matrix a = detail::annihilation(F);
    const Matrix x = a + Matrix(a.adjoint());

    Model m;
    m.spec = spec;
    m.h.dim = F;
    m.h.basis_label = "fock";
    Matrix n0 = Matrix::Zero(F, F);
    for (int n = 0; n < F; ++n) n0(n, n) = spec.omega * (n + 0.5);
    m.h.insert_mode(0, n0);
    for (std::size_t k = 0; k < spec.sine_coeffs.size(); ++k) {
        const double amp = spec.sine_coeffs[k];
        if (amp == 0.0) continue;
        const int mode = static_cast<int>(k) + 1;
        m.h.insert_mode(mode, Complex(0.0, -0.5) * amp * x);
        m.h.insert_mode(-mode, Complex(0.0, +0.5) * amp * x);
    }

    m.partition = BlockPartition::unit_blocks(F);
    for (int j = 0; j < F; ++j) {
        m.partition.labels.emplace_back((j + 1.0 / 3.0) * spec.omega, (j + 2.0 / 3.0) * spec.omega);
    }
    // J(ψ)(s) = conj(ψ(−s)): entrywise conjugation times the parity signature.
    Vector parity(F);
    for (int n = 0; n < F; ++n) parity[n] = (n % 2 == 0) ? 1.0 : -1.0;
    m.conjugation = Conjugation::with_phases(parity);
    m.coupling_bandwidth = 1;
    m.fock_level.resize(static_cast<std::size_t>(F));
    for (int n = 0; n < F; ++n) m.fock_level[static_cast<std::size_t>(n)] = n;
    return m;
}

// Seeded Hermitian-pair banded family: mode 0 Hermitized, H_{−n} = (H_n)†,
// every mode banded with the given bandwidth under unit blocks.
inline Model build_random_banded(const ModelSpec& spec) {
    if (spec.dim < 2 || spec.dim > 64) throw std::invalid_argument("build_random_banded: dim must be in 2..64");
    if (spec.bandwidth < 0 || spec.num_modes < 0) {
        throw std::invalid_argument("build_random_banded: bandwidth/num_modes must be nonnegative");
    }
    std::mt19937_64 rng(spec.seed);
    const int d = spec.dim;
    auto draw = [&]() {
        Matrix a = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (std::abs(i - j) > spec.bandwidth) continue;
                const double re = detail::uniform_sym(rng, spec.scale);
                const double im = detail::uniform_sym(rng, spec.scale);
                a(i, j) = Complex(re, im);
            }
        }
        return a;
    };

    Model m;
    m.spec = spec;
    m.h.dim = d;
    m.h.basis_label = "canonical";
    const Matrix h0 = draw();
    m.h.insert_mode(0, 0.5 * (h0 + Matrix(h0.adjoint())));
    for (int n = 1; n <= spec.num_modes; ++n) {
        const Matrix hn = draw();
        m.h.insert_mode(n, hn);
        m.h.insert_mode(-n, hn.adjoint());
    }
    m.partition = BlockPartition::unit_blocks(d);
    m.coupling_bandwidth = spec.bandwidth;
    return m;
}

inline Model build_model(const ModelSpec& spec) {
    switch (spec.variant) {
        case ModelVariant::Rabi: return build_rabi(spec);
        case ModelVariant::DrivenHO: return build_driven_ho(spec);
        case ModelVariant::RandomBanded: return build_random_banded(spec);
    }
    throw std::invalid_argument("build_model: unknown variant");
}

} // namespace floquet
