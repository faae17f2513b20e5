// series.hpp — Effective Hamiltonian series H(T) = Σ_l T^l H^[l].

#pragma once

#include "floquet/operator.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace floquet {

enum class SeriesKind { FM, EFF };

inline std::string to_string(SeriesKind k) {
    return k == SeriesKind::FM ? "FM" : "EFF";
}

struct EffectiveSeries {
    SeriesKind kind = SeriesKind::EFF;
    int order = 0;                 // L
    std::vector<Operator> coeffs;  // H^[0..L]

    void validate() const {
        if (static_cast<int>(coeffs.size()) != order + 1) {
            throw std::invalid_argument("EffectiveSeries: coeffs length must be order + 1");
        }
        for (const auto& c : coeffs) {
            if (c.dim() != coeffs.front().dim()) {
                throw std::invalid_argument("EffectiveSeries: mixed coefficient dims");
            }
        }
    }

    Index dim() const { return coeffs.empty() ? 0 : coeffs.front().dim(); }

    // Σ_{l≤L} T^l H^[l].
    Matrix assemble(double T) const {
        Matrix out = Matrix::Zero(dim(), dim());
        double tl = 1.0;
        for (const auto& c : coeffs) {
            out += tl * c.mat;
            tl *= T;
        }
        return out;
    }
};

} // namespace floquet
