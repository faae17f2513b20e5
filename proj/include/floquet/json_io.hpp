// json_io.hpp — JSON (de)serialization of operators, series, and reports.

#pragma once

#include "floquet/operator.hpp"
#include "floquet/series.hpp"
#include "floquet/verify.hpp"

#include <json.hpp>

#include <string>

namespace floquet {

using Json = nlohmann::json;

// {dim, basis_label, re: [...], im: [...]} row-major.
inline Json to_json(const Operator& a) {
    Json j;
    j["dim"] = a.dim();
    j["basis_label"] = a.basis_label;
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(a.dim() * a.dim()));
    im.reserve(static_cast<std::size_t>(a.dim() * a.dim()));
    for (Index r = 0; r < a.dim(); ++r) {
        for (Index c = 0; c < a.dim(); ++c) {
            re.push_back(a.mat(r, c).real());
            im.push_back(a.mat(r, c).imag());
        }
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline Operator operator_from_json(const Json& j) {
    const Index dim = j.at("dim").get<Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != static_cast<std::size_t>(dim * dim) || im.size() != re.size()) {
        throw std::invalid_argument("operator_from_json: entry count mismatch");
    }
    Matrix m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            const std::size_t k = static_cast<std::size_t>(r * dim + c);
            m(r, c) = Complex(re[k], im[k]);
        }
    }
    return Operator(std::move(m), j.value("basis_label", std::string{}));
}

inline Json to_json(const EffectiveSeries& s) {
    Json j;
    j["kind"] = to_string(s.kind);
    j["order"] = s.order;
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
    j["coeffs"] = coeffs;
    return j;
}

inline EffectiveSeries series_from_json(const Json& j) {
    EffectiveSeries s;
    s.kind = (j.at("kind").get<std::string>() == "FM") ? SeriesKind::FM : SeriesKind::EFF;
    s.order = j.at("order").get<int>();
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(operator_from_json(c));
    s.validate();
    return s;
}

inline Json to_json(const ScalingReport& r) {
    Json j;
    j["model"] = r.model;
    j["mode"] = r.mode;
    j["order"] = r.order;
    j["target_slope"] = r.target_slope;
    Json pts = Json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"T", p.T}, {"q", p.q}, {"error", p.error}, {"floored", p.floored}});
    }
    j["points"] = pts;
    j["fitted_slope"] = r.fitted_slope;
    j["fitted_intercept"] = r.fitted_intercept;
    j["r_squared"] = r.r_squared;
    j["floor_flagged"] = r.floor_flagged;
    j["points_used"] = r.points_used;
    j["notes"] = r.notes;
    return j;
}

inline Json to_json(const PropertyReport& r) {
    Json j;
    j["model"] = r.model;
    j["order"] = r.order;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass();
    return j;
}

} // namespace floquet
