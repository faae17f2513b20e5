// propagate.hpp — Reference propagators for the exact T-periodic dynamics
// (commutator-free 4th order / midpoint exponential, with step-halving
// control) and the autonomous effective dynamics.

#pragma once

#include "floquet/matfunc.hpp"
#include "floquet/series.hpp"
#include "floquet/trigpoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floquet {

enum class PropMethod { CF4, MidpointExp };

struct PropagatorConfig {
    PropMethod method = PropMethod::CF4;
    int base_steps_per_period = 64;
    double tol = 1e-11;
    int max_halvings = 10;

    void validate() const {
        if (base_steps_per_period < 8) {
            throw std::invalid_argument("PropagatorConfig: base_steps_per_period must be >= 8");
        }
        if (tol < 1e-13) throw std::invalid_argument("PropagatorConfig: tol must be >= 1e-13");
        if (max_halvings < 1) throw std::invalid_argument("PropagatorConfig: max_halvings must be >= 1");
    }
};

namespace detail {

// One pass over [t0, t1] with n steps for dU/dt = -i H(t/T) U.
inline Matrix propagate_fixed(const FourierOp& h, double T, double t1, double t0, int n,
                              PropMethod method) {
    const Index dim = h.dim;
    Matrix u = Matrix::Identity(dim, dim);
    const double step = (t1 - t0) / n;
    if (step == 0.0) return u;

    if (method == PropMethod::MidpointExp) {
        for (int k = 0; k < n; ++k) {
            const double tm = t0 + (k + 0.5) * step;
            u = matexp(h.eval(tm / T), Complex(0.0, -step)) * u;
        }
        return u;
    }

    // CF4: two exponentials per step with Gauss–Legendre nodes c = 1/2 ∓ √3/6
    // and weights a1 = (3-2√3)/12, a2 = (3+2√3)/12; right factor acts first.
    const double sqrt3 = std::sqrt(3.0);
    const double c1 = 0.5 - sqrt3 / 6.0;
    const double c2 = 0.5 + sqrt3 / 6.0;
    const double a1 = (3.0 - 2.0 * sqrt3) / 12.0;
    const double a2 = (3.0 + 2.0 * sqrt3) / 12.0;
    for (int k = 0; k < n; ++k) {
        const double tk = t0 + k * step;
        const Matrix h1 = h.eval((tk + c1 * step) / T);
        const Matrix h2 = h.eval((tk + c2 * step) / T);
        const Matrix first = a2 * h1 + a1 * h2;
        const Matrix second = a1 * h1 + a2 * h2;
        u = matexp(second, Complex(0.0, -step)) * (matexp(first, Complex(0.0, -step)) * u);
    }
    return u;
}

} // namespace detail

// U^(T)(t1, t0) with step-halving control: accept the halved propagator once
// consecutive refinements agree to cfg.tol in Frobenius norm.
inline Operator reference_propagator(const FourierOp& h, double T, double t1, double t0,
                                     const PropagatorConfig& cfg) {
    if (T <= 0.0) throw std::invalid_argument("reference_propagator: period must be positive");
    cfg.validate();
    if (t1 == t0) return Operator::identity(h.dim, h.basis_label);

    const double span = std::abs(t1 - t0);
    int n = std::max(8, static_cast<int>(std::ceil(cfg.base_steps_per_period * span / T)));
    Matrix coarse = detail::propagate_fixed(h, T, t1, t0, n, cfg.method);
    for (int halving = 0; halving < cfg.max_halvings; ++halving) {
        n *= 2;
        Matrix fine = detail::propagate_fixed(h, T, t1, t0, n, cfg.method);
        if ((fine - coarse).norm() <= cfg.tol) return Operator(fine, h.basis_label);
        coarse = std::move(fine);
    }
    throw std::runtime_error("reference_propagator: tolerance not reached within max_halvings");
}

// U^(T)(qT) as the q-th power of the one-period propagator.
inline Operator stroboscopic(const FourierOp& h, double T, long long q,
                             const PropagatorConfig& cfg) {
    if (q == 0) return Operator::identity(h.dim, h.basis_label);
    const Operator u = reference_propagator(h, T, T, 0.0, cfg);
    return Operator(matpow(u.mat, q), h.basis_label);
}

// e^{-i t H_eff,L(T)} with the assembled polynomial Hermitized first.
inline Operator effective_propagator(const EffectiveSeries& series, double T, double t) {
    Matrix heff = series.assemble(T);
    heff = 0.5 * (heff + Matrix(heff.adjoint()));
    return Operator(matexp(heff, Complex(0.0, -t)), series.coeffs.front().basis_label);
}

} // namespace floquet
