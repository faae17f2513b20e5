// magnus.hpp — Floquet–Magnus expansion: Bernoulli numbers, the Ω_l
// recursion in rescaled (period-stripped) form, and coefficient extraction.

#pragma once

#include "floquet/series.hpp"
#include "floquet/trigpoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace floquet {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// jth Bernoulli number in the classical convention (B_1 = -1/2), exact.
inline Rational bernoulli(int j) {
    if (j < 0 || j > 32) throw std::out_of_range("bernoulli: supported range is 0..32");
    using BigInt = boost::multiprecision::cpp_int;
    using BigRat = boost::multiprecision::cpp_rational;
    // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k, B_0 = 1.
    std::vector<BigRat> b(static_cast<std::size_t>(j) + 1);
    for (int m = 0; m <= j; ++m) {
        if (m == 0) {
            b[0] = 1;
            continue;
        }
        BigRat sum = 0;
        BigInt binom = 1; // C(m+1, k), starting at k = 0
        for (int k = 0; k < m; ++k) {
            sum += BigRat(binom) * b[static_cast<std::size_t>(k)];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        b[static_cast<std::size_t>(m)] = -sum / (m + 1);
    }
    const BigRat& r = b.back();
    Rational out;
    out.num = numerator(r).convert_to<std::int64_t>();
    out.den = denominator(r).convert_to<std::int64_t>();
    return out;
}

namespace detail {

// Ordered compositions of `total` into `parts` strictly positive integers.
inline void compositions(int total, int parts, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 1; first <= total - parts + 1; ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (total >= parts && parts >= 1) compositions(total, parts, cur, out);
    return out;
}

} // namespace detail

// Period-stripped Magnus terms for the 1-periodic H:
//   Ω̃_1(t) = i ∫_0^t H(σ) dσ
//   Ω̃_l(t) = Σ_{j=1}^{l-1} (B_j/j!) Σ_{k_1+..+k_j=l-1} ∫_0^t ad_{Ω̃_{k_1}(σ)} ··· ad_{Ω̃_{k_j}(σ)} (iH(σ)) dσ
// so that Ω_l^{(T)}(tT) = T^l Ω̃_l(t). With this placement of the i factors,
// reproducing the one-period propagator log requires the B_1 = +1/2 Bernoulli
// branch (only j = 1 differs between the two conventions; the monodromy-log
// oracle pins the choice).
inline std::vector<TrigPolyOp> omega_terms(const FourierOp& h, int count,
                                           TrigPolyLimits lim = {}) {
    if (count < 1 || count > 8) throw std::invalid_argument("omega_terms: count must be in 1..8");
    const TrigPolyOp ih = scale(from_fourier(h, lim), Complex(0.0, 1.0));
    std::vector<TrigPolyOp> omega;
    omega.reserve(static_cast<std::size_t>(count));
    omega.push_back(integrate_from_zero(ih));
    for (int l = 2; l <= count; ++l) {
        TrigPolyOp acc = TrigPolyOp::zero(h.dim, h.basis_label, lim);
        double jfact = 1.0;
        for (int j = 1; j <= l - 1; ++j) {
            jfact *= j;
            const Rational bj = bernoulli(j);
            const double coeff = (j == 1 ? 0.5 : bj.value()) / jfact;
            if (coeff == 0.0) continue;
            for (const auto& ks : detail::compositions(l - 1, j)) {
                TrigPolyOp term = ih;
                for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
                    const TrigPolyOp& w = omega[static_cast<std::size_t>(*it - 1)];
                    term = sub(mul(w, term), mul(term, w));
                }
                acc = add(acc, scale(term, coeff));
            }
        }
        omega.push_back(integrate_from_zero(acc));
    }
    return omega;
}

// H_FM^[l] = -i Ω̃_{l+1}(1): the T^l coefficient of the expansion.
inline EffectiveSeries fm_coefficients(const FourierOp& h, int L, TrigPolyLimits lim = {}) {
    if (L < 0 || L > 7) throw std::invalid_argument("fm_coefficients: order must be in 0..7");
    const auto omega = omega_terms(h, L + 1, lim);
    EffectiveSeries s;
    s.kind = SeriesKind::FM;
    s.order = L;
    s.coeffs.reserve(static_cast<std::size_t>(L) + 1);
    for (int l = 0; l <= L; ++l) {
        s.coeffs.emplace_back(Matrix(Complex(0.0, -1.0) * eval(omega[static_cast<std::size_t>(l)], 1.0)),
                              h.basis_label);
    }
    s.validate();
    return s;
}

} // namespace floquet
