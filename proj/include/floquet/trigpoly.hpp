// trigpoly.hpp — Operator-valued functions Σ_{p,n} t^p e^{i2πnt} A_{p,n},
// closed under products, primitives, period averages and oscillation parts.
// Integration is exact (termwise closed form), so period averages carry only
// roundoff — no quadrature tolerance enters the constructions built on top.

#pragma once

#include "floquet/operator.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace floquet {

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct TermGrowthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard caps on term growth. The recursions at desk-scale orders stay far
// below these; exceeding one aborts instead of silently truncating.
struct TrigPolyLimits {
    int max_mode = 64;
    int max_poly_degree = 16;
    double prune_rel = 1e-15;
};

// e^{i 2π n t} with the argument reduced mod 1 first, so integer t gives
// exactly 1 and large |n·t| loses no accuracy.
inline Complex unit_phase(long long n, double t) {
    const double x = static_cast<double>(n) * t;
    const double frac = x - std::nearbyint(x);
    return std::polar(1.0, two_pi * frac);
}

// ------------------------------- FourierOp ----------------------------------

// 1-periodic operator H(t) = Σ_n e^{i2πnt} H_n with finitely many modes.
struct FourierOp {
    std::map<int, Matrix> modes;
    Index dim = 0;
    std::string basis_label;

    void insert_mode(int n, Matrix m) {
        if (dim == 0) dim = m.rows();
        if (m.rows() != dim || m.cols() != dim) {
            throw std::invalid_argument("FourierOp: mode dimension mismatch");
        }
        auto it = modes.find(n);
        if (it == modes.end()) modes.emplace(n, std::move(m));
        else it->second += m;
    }

    int max_mode() const {
        int m = 0;
        for (const auto& [n, _] : modes) m = std::max(m, std::abs(n));
        return m;
    }

    // True iff H_{-n} = (H_n)† for all n, which makes H(t) Hermitian for real t.
    bool hermitian_flag(double rel_tol = 1e-13) const {
        double scale = 0.0;
        for (const auto& [n, m] : modes) scale = std::max(scale, m.norm());
        if (scale == 0.0) return true;
        for (const auto& [n, m] : modes) {
            const auto it = modes.find(-n);
            const double d = (it == modes.end()) ? m.norm() : (Matrix(m.adjoint()) - it->second).norm();
            if (d > rel_tol * scale) return false;
        }
        return true;
    }

    Matrix eval(double t) const {
        Matrix out = Matrix::Zero(dim, dim);
        for (const auto& [n, m] : modes) out += unit_phase(n, t) * m;
        return out;
    }
};

// ------------------------------- TrigPolyOp ---------------------------------

struct TrigPolyOp {
    // (p, n) -> A_{p,n}; value at t is Σ t^p e^{i2πnt} A_{p,n}.
    std::map<std::pair<int, int>, Matrix> terms;
    Index dim = 0;
    std::string basis_label;
    TrigPolyLimits limits;

    static TrigPolyOp zero(Index d, std::string basis = "", TrigPolyLimits lim = {}) {
        TrigPolyOp f;
        f.dim = d;
        f.basis_label = std::move(basis);
        f.limits = lim;
        return f;
    }

    static TrigPolyOp constant(const Matrix& a, std::string basis = "", TrigPolyLimits lim = {}) {
        TrigPolyOp f = zero(a.rows(), std::move(basis), lim);
        f.add_term(0, 0, a);
        return f;
    }

    void add_term(int p, int n, const Matrix& a) {
        if (a.rows() != dim || a.cols() != dim) {
            throw std::invalid_argument("TrigPolyOp: term dimension mismatch");
        }
        if (p < 0) throw std::invalid_argument("TrigPolyOp: negative polynomial degree");
        if (p > limits.max_poly_degree || std::abs(n) > limits.max_mode) {
            throw TermGrowthError("TrigPolyOp: term growth cap exceeded (p=" + std::to_string(p) +
                                  ", n=" + std::to_string(n) + ")");
        }
        auto it = terms.find({p, n});
        if (it == terms.end()) terms.emplace(std::make_pair(p, n), a);
        else it->second += a;
    }

    int max_poly_degree() const {
        int p = 0;
        for (const auto& [k, _] : terms) p = std::max(p, k.first);
        return p;
    }
    int max_mode() const {
        int n = 0;
        for (const auto& [k, _] : terms) n = std::max(n, std::abs(k.second));
        return n;
    }

    double largest_term_norm() const {
        double s = 0.0;
        for (const auto& [_, a] : terms) s = std::max(s, a.norm());
        return s;
    }

    void prune() {
        const double tol = limits.prune_rel * largest_term_norm();
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second.norm() <= tol) it = terms.erase(it);
            else ++it;
        }
    }
};

inline TrigPolyOp from_fourier(const FourierOp& h, TrigPolyLimits lim = {}) {
    TrigPolyOp f = TrigPolyOp::zero(h.dim, h.basis_label, lim);
    for (const auto& [n, m] : h.modes) f.add_term(0, n, m);
    return f;
}

inline Matrix eval(const TrigPolyOp& f, double t) {
    Matrix out = Matrix::Zero(f.dim, f.dim);
    for (const auto& [k, a] : f.terms) {
        out += std::pow(t, k.first) * unit_phase(k.second, t) * a;
    }
    return out;
}

inline TrigPolyOp add(const TrigPolyOp& f, const TrigPolyOp& g) {
    if (f.dim != g.dim) throw std::invalid_argument("TrigPolyOp add: dimension mismatch");
    TrigPolyOp out = f;
    for (const auto& [k, a] : g.terms) out.add_term(k.first, k.second, a);
    out.prune();
    return out;
}

inline TrigPolyOp scale(const TrigPolyOp& f, Complex c) {
    TrigPolyOp out = f;
    for (auto& [_, a] : out.terms) a *= c;
    return out;
}

inline TrigPolyOp sub(const TrigPolyOp& f, const TrigPolyOp& g) {
    return add(f, scale(g, Complex(-1.0, 0.0)));
}

// Pointwise operator product.
inline TrigPolyOp mul(const TrigPolyOp& f, const TrigPolyOp& g) {
    if (f.dim != g.dim) throw std::invalid_argument("TrigPolyOp mul: dimension mismatch");
    TrigPolyOp out = TrigPolyOp::zero(f.dim, f.basis_label, f.limits);
    for (const auto& [k1, a] : f.terms) {
        for (const auto& [k2, b] : g.terms) {
            out.add_term(k1.first + k2.first, k1.second + k2.second, a * b);
        }
    }
    out.prune();
    return out;
}

inline TrigPolyOp mul(const Matrix& a, const TrigPolyOp& g) {
    TrigPolyOp out = g;
    for (auto& [_, b] : out.terms) b = a * b;
    out.prune();
    return out;
}

inline TrigPolyOp mul(const TrigPolyOp& f, const Matrix& b) {
    TrigPolyOp out = f;
    for (auto& [_, a] : out.terms) a = a * b;
    out.prune();
    return out;
}

// F(t) = ∫_0^t f(s) ds, exactly. Monomials go to t^{p+1}/(p+1); mixed terms
// t^p e^{i2πns} integrate by repeated parts:
//   ∫_0^t s^p e^{ws} ds = e^{wt} Σ_{m=0}^{p} (-1)^m p!/(p-m)! t^{p-m} / w^{m+1}
//                         - (-1)^p p! / w^{p+1},   w = i2πn.
inline TrigPolyOp integrate_from_zero(const TrigPolyOp& f) {
    TrigPolyOp out = TrigPolyOp::zero(f.dim, f.basis_label, f.limits);
    for (const auto& [k, a] : f.terms) {
        const auto [p, n] = k;
        if (n == 0) {
            out.add_term(p + 1, 0, a / static_cast<double>(p + 1));
            continue;
        }
        const Complex w(0.0, two_pi * n);
        Complex coeff = 1.0 / w; // (-1)^m p!/(p-m)! / w^{m+1} at m = 0
        for (int m = 0; m <= p; ++m) {
            out.add_term(p - m, n, coeff * a);
            if (m < p) coeff *= -static_cast<double>(p - m) / w;
        }
        out.add_term(0, 0, -coeff * a); // subtract antiderivative at 0
    }
    out.prune();
    return out;
}

// ∫_0^1 f(t) dt in closed form per term.
inline Operator average(const TrigPolyOp& f) {
    Matrix out = Matrix::Zero(f.dim, f.dim);
    for (const auto& [k, a] : f.terms) {
        const auto [p, n] = k;
        if (n == 0) {
            out += a / static_cast<double>(p + 1);
            continue;
        }
        // value of the antiderivative at 1 minus at 0; e^{i2πn} = 1 exactly.
        const Complex w(0.0, two_pi * n);
        Complex coeff = 1.0 / w;
        Complex total = 0.0;
        for (int m = 0; m <= p; ++m) {
            total += coeff;
            if (m < p) coeff *= -static_cast<double>(p - m) / w;
        }
        total -= coeff; // antiderivative at 0 (the m = p constant)
        out += total * a;
    }
    return Operator(out, f.basis_label);
}

// f minus its period average. For a pure Fourier input this just erases the
// (0,0) term, keeping the zero-average property exact.
inline TrigPolyOp osc(const TrigPolyOp& f) {
    if (f.max_poly_degree() == 0) {
        TrigPolyOp out = f;
        out.terms.erase({0, 0});
        return out;
    }
    TrigPolyOp out = f;
    out.add_term(0, 0, -average(f).mat);
    out.prune();
    return out;
}

} // namespace floquet
