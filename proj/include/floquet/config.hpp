// config.hpp — Run configuration: TOML (primary) and JSON parsing into the
// model/run/grid/propagator/output blocks the CLI commands consume.

#pragma once

#include "floquet/models.hpp"
#include "floquet/propagate.hpp"
#include "floquet/verify.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace floquet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace toml {

// Minimal TOML reader covering what run configs need: [sections], comments,
// and key = string | number | boolean | array-of-numbers.
using Value = std::variant<std::string, double, bool, std::vector<double>>;
using Table = std::map<std::string, std::map<std::string, Value>>;

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

inline Value parse_scalar(const std::string& tok, int lineno) {
    if (tok.empty()) throw ConfigError("toml: empty value on line " + std::to_string(lineno));
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') {
            throw ConfigError("toml: unterminated string on line " + std::to_string(lineno));
        }
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("toml: cannot parse value '" + tok + "' on line " + std::to_string(lineno));
    }
}

} // namespace detail

inline Table parse(std::istream& in) {
    Table table;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip(detail::strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("toml: bad section on line " + std::to_string(lineno));
            section = detail::strip(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("toml: empty section name on line " + std::to_string(lineno));
            table[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("toml: expected key = value on line " + std::to_string(lineno));
        }
        const std::string key = detail::strip(line.substr(0, eq));
        const std::string val = detail::strip(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("toml: empty key on line " + std::to_string(lineno));
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']') throw ConfigError("toml: unterminated array on line " + std::to_string(lineno));
            std::vector<double> arr;
            std::string inner = val.substr(1, val.size() - 2);
            std::istringstream items(inner);
            std::string item;
            while (std::getline(items, item, ',')) {
                item = detail::strip(item);
                if (item.empty()) continue;
                const Value v = detail::parse_scalar(item, lineno);
                if (!std::holds_alternative<double>(v)) {
                    throw ConfigError("toml: arrays must hold numbers (line " + std::to_string(lineno) + ")");
                }
                arr.push_back(std::get<double>(v));
            }
            table[section][key] = arr;
        } else {
            table[section][key] = detail::parse_scalar(val, lineno);
        }
    }
    return table;
}

inline Table parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    return parse(f);
}

} // namespace toml

// ------------------------------- RunConfig ----------------------------------

struct RunConfig {
    ModelSpec model;
    int order = 1;
    TGrid grid;
    long long q = 1;
    double horizon_c = 1.0;
    std::string mode = "strobo"; // strobo | horizon | oracle
    bool use_state = true;       // vector-norm errors with the model default state
    PropagatorConfig prop;
    std::string out_dir = "out";
    bool svg = false;
    double compare_threshold = 1e-9;
    // testing aids, settable from the command line only
    bool debug_flip_sign = false;
    bool debug_break_hermiticity = false;

    void validate() const {
        if (order < 0 || order > 6) throw ConfigError("run.order must be in 0..6");
        if (grid.count < 2) throw ConfigError("grid.count must be >= 2");
        if (grid.factor <= 0.0 || grid.factor >= 1.0) throw ConfigError("grid.factor must be in (0,1)");
        if (mode != "strobo" && mode != "horizon" && mode != "oracle") {
            throw ConfigError("run.mode must be strobo, horizon or oracle");
        }
        try {
            prop.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
};

namespace detail {

class SectionReader {
public:
    SectionReader(const toml::Table& t, std::string section) : t_(t), section_(std::move(section)) {}

    double number(const std::string& key, double fallback) const {
        const toml::Value* v = find(key);
        if (!v) return fallback;
        if (!std::holds_alternative<double>(*v)) throw ConfigError(where(key) + " must be a number");
        return std::get<double>(*v);
    }
    long long integer(const std::string& key, long long fallback) const {
        const double d = number(key, static_cast<double>(fallback));
        const long long i = static_cast<long long>(d);
        if (static_cast<double>(i) != d) throw ConfigError(where(key) + " must be an integer");
        return i;
    }
    std::string text(const std::string& key, const std::string& fallback) const {
        const toml::Value* v = find(key);
        if (!v) return fallback;
        if (!std::holds_alternative<std::string>(*v)) throw ConfigError(where(key) + " must be a string");
        return std::get<std::string>(*v);
    }
    bool boolean(const std::string& key, bool fallback) const {
        const toml::Value* v = find(key);
        if (!v) return fallback;
        if (!std::holds_alternative<bool>(*v)) throw ConfigError(where(key) + " must be a boolean");
        return std::get<bool>(*v);
    }
    std::vector<double> array(const std::string& key, std::vector<double> fallback) const {
        const toml::Value* v = find(key);
        if (!v) return fallback;
        if (!std::holds_alternative<std::vector<double>>(*v)) {
            throw ConfigError(where(key) + " must be an array of numbers");
        }
        return std::get<std::vector<double>>(*v);
    }

private:
    const toml::Value* find(const std::string& key) const {
        auto sit = t_.find(section_);
        if (sit == t_.end()) return nullptr;
        auto kit = sit->second.find(key);
        return (kit == sit->second.end()) ? nullptr : &kit->second;
    }
    std::string where(const std::string& key) const { return "[" + section_ + "] " + key; }

    const toml::Table& t_;
    std::string section_;
};

inline toml::Table table_from_json(const nlohmann::json& j) {
    toml::Table t;
    for (const auto& [section, body] : j.items()) {
        if (!body.is_object()) throw ConfigError("json config: top-level entries must be objects");
        for (const auto& [key, val] : body.items()) {
            if (val.is_string()) t[section][key] = val.get<std::string>();
            else if (val.is_boolean()) t[section][key] = val.get<bool>();
            else if (val.is_number()) t[section][key] = val.get<double>();
            else if (val.is_array()) t[section][key] = val.get<std::vector<double>>();
            else throw ConfigError("json config: unsupported value type for " + section + "." + key);
        }
    }
    return t;
}

} // namespace detail

inline RunConfig run_config_from_table(const toml::Table& t) {
    RunConfig cfg;
    const detail::SectionReader model(t, "model");
    const std::string variant = model.text("variant", "rabi");
    if (variant == "rabi") cfg.model.variant = ModelVariant::Rabi;
    else if (variant == "driven_ho") cfg.model.variant = ModelVariant::DrivenHO;
    else if (variant == "random_banded") cfg.model.variant = ModelVariant::RandomBanded;
    else throw ConfigError("model.variant must be rabi, driven_ho or random_banded");

    cfg.model.g = model.number("g", cfg.model.g);
    cfg.model.delta = model.number("delta", cfg.model.delta);
    cfg.model.omega = model.number("omega", cfg.model.omega);
    cfg.model.fock_dim = static_cast<int>(model.integer("fock_dim", cfg.model.fock_dim));
    cfg.model.sine_coeffs = model.array("sine_coeffs", cfg.model.sine_coeffs);
    cfg.model.dim = static_cast<int>(model.integer("dim", cfg.model.dim));
    cfg.model.bandwidth = static_cast<int>(model.integer("bandwidth", cfg.model.bandwidth));
    cfg.model.num_modes = static_cast<int>(model.integer("num_modes", cfg.model.num_modes));
    cfg.model.seed = static_cast<std::uint64_t>(model.integer("seed", static_cast<long long>(cfg.model.seed)));
    cfg.model.scale = model.number("scale", cfg.model.scale);

    const detail::SectionReader run(t, "run");
    cfg.order = static_cast<int>(run.integer("order", cfg.order));
    cfg.q = run.integer("q", cfg.q);
    cfg.horizon_c = run.number("horizon_c", cfg.horizon_c);
    cfg.mode = run.text("mode", cfg.mode);
    cfg.compare_threshold = run.number("compare_threshold", cfg.compare_threshold);
    const std::string state = run.text("state", "default");
    if (state == "default") cfg.use_state = true;
    else if (state == "none") cfg.use_state = false;
    else throw ConfigError("run.state must be 'default' or 'none'");

    const detail::SectionReader grid(t, "grid");
    cfg.grid.start = grid.number("start", cfg.grid.start);
    cfg.grid.factor = grid.number("factor", cfg.grid.factor);
    cfg.grid.count = static_cast<int>(grid.integer("count", cfg.grid.count));

    const detail::SectionReader prop(t, "propagator");
    const std::string method = prop.text("method", "cf4");
    if (method == "cf4") cfg.prop.method = PropMethod::CF4;
    else if (method == "midpoint") cfg.prop.method = PropMethod::MidpointExp;
    else throw ConfigError("propagator.method must be cf4 or midpoint");
    cfg.prop.base_steps_per_period =
        static_cast<int>(prop.integer("base_steps_per_period", cfg.prop.base_steps_per_period));
    cfg.prop.tol = prop.number("tol", cfg.prop.tol);
    cfg.prop.max_halvings = static_cast<int>(prop.integer("max_halvings", cfg.prop.max_halvings));

    const detail::SectionReader output(t, "output");
    cfg.out_dir = output.text("dir", cfg.out_dir);
    cfg.svg = output.boolean("svg", cfg.svg);

    cfg.validate();
    return cfg;
}

// Dispatch on extension: .json parses as JSON, anything else as TOML.
inline RunConfig load_run_config(const std::string& path) {
    const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    if (is_json) {
        std::ifstream f(path);
        if (!f) throw ConfigError("cannot open config file: " + path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("json config parse error: ") + e.what());
        }
        return run_config_from_table(detail::table_from_json(j));
    }
    return run_config_from_table(toml::parse_file(path));
}

} // namespace floquet
