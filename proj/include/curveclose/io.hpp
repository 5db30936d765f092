#pragma once

/**
 * @file io.hpp
 * @brief Curve JSON, run configuration and CSV result rows.
 *
 * Curve files:
 *   {"version":1,"speed":c,"theta":{"kind":"samples","values":[...]}}
 *   {"version":1,"speed":c,"theta":{"kind":"fourier","winding":m,
 *                                   "terms":[{"amp":a,"freq":p,"phase":f},...]}}
 * Fourier specs may carry an "offset" subtracted from theta (written by normalization).
 */

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "curve.hpp"
#include "cuts.hpp"
#include "perm.hpp"
#include "rearrange.hpp"
#include "solver.hpp"

namespace curveclose {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips; never depends on the locale.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Fixed-point with `digits` decimals, locale-independent.
inline std::string format_fixed(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key,
                                   const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + ": missing field '" + key + "'");
    return *it;
}

inline double number(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": expected a number");
    return v.get<double>();
}

inline int integer(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path + ": expected an integer");
    return v.get<int>();
}

}  // namespace detail

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("JSON syntax error at " + detail::line_column(text, e.byte) + ": " +
                         e.what());
    }
}

inline TurningCurve curve_from_json(const nlohmann::json& j) {
    using detail::field;
    using detail::number;
    if (j.contains("version") && detail::integer(j["version"], "version") != 1) {
        throw ParseError("version: only version 1 is supported");
    }
    const double speed = number(field(j, "speed", "curve"), "speed");
    const auto& theta = field(j, "theta", "curve");
    const auto& kind = field(theta, "kind", "theta");
    if (!kind.is_string()) throw ParseError("theta.kind: expected a string");
    ThetaSpec spec;
    if (kind == "samples") {
        const auto& values = field(theta, "values", "theta");
        if (!values.is_array()) throw ParseError("theta.values: expected an array");
        SampledTheta s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            s.values.push_back(number(values[i], "theta.values[" + std::to_string(i) + "]"));
        }
        spec = std::move(s);
    } else if (kind == "fourier") {
        FourierTheta f;
        f.winding = detail::integer(field(theta, "winding", "theta"), "theta.winding");
        if (theta.contains("terms")) {
            const auto& terms = theta["terms"];
            if (!terms.is_array()) throw ParseError("theta.terms: expected an array");
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string p = "theta.terms[" + std::to_string(i) + "]";
                f.terms.push_back({number(field(terms[i], "amp", p), p + ".amp"),
                                   number(field(terms[i], "freq", p), p + ".freq"),
                                   number(field(terms[i], "phase", p), p + ".phase")});
            }
        }
        if (theta.contains("offset")) f.offset = number(theta["offset"], "theta.offset");
        spec = std::move(f);
    } else {
        throw ParseError("theta.kind: expected \"samples\" or \"fourier\"");
    }
    try {
        return TurningCurve(speed, std::move(spec));
    } catch (const CurveError& e) {
        throw ParseError(e.what());
    }
}

inline nlohmann::json curve_to_json(const TurningCurve& curve) {
    nlohmann::json j;
    j["version"] = 1;
    j["speed"] = curve.speed();
    if (const auto* s = std::get_if<SampledTheta>(&curve.theta_spec())) {
        j["theta"] = {{"kind", "samples"}, {"values", s->values}};
    } else {
        const auto& f = std::get<FourierTheta>(curve.theta_spec());
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : f.terms) {
            terms.push_back({{"amp", t.amp}, {"freq", t.freq}, {"phase", t.phase}});
        }
        j["theta"] = {{"kind", "fourier"}, {"winding", f.winding}, {"terms", terms}};
        if (f.offset != 0.0) j["theta"]["offset"] = f.offset;
    }
    return j;
}

/// Resamples a composite (e.g. a rearranged curve) as a curve with n + 1 theta samples.
inline TurningCurve composite_to_curve(const Composite& c, std::size_t n = default_resolution) {
    const double length = c.length();
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = c.theta(length * static_cast<double>(i) / static_cast<double>(n));
    }
    return TurningCurve::sampled(c.speed() * length, std::move(values));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline TurningCurve load_curve(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return curve_from_json(parse_json_text(text));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

struct RunConfig {
    std::size_t resolution = default_resolution;
    SolverConfig solver;
    std::size_t oracle_resolution = 500;
    std::uint64_t seed = 1;

    void validate() const {
        const auto n = resolution;
        if (n < 64 || (n & (n - 1)) != 0) {
            throw ParseError("resolution must be a power of two >= 64");
        }
        for (double tol : {solver.residual_tol, solver.k_residual_tol, solver.closed_tol,
                           solver.bracket_width, solver.dedupe, solver.fd_step}) {
            if (!(tol > 0.0)) throw ParseError("tolerances must be positive");
        }
        if (solver.h_grid < 2 || solver.loop_samples < 8 || oracle_resolution < 2) {
            throw ParseError("grid sizes too small");
        }
    }
};

inline RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {}) {
    if (!j.is_object()) throw ParseError("config: expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string p = "config." + key;
        auto& s = base.solver;
        if (key == "resolution") base.resolution = static_cast<std::size_t>(detail::integer(value, p));
        else if (key == "residual_tol") s.residual_tol = detail::number(value, p);
        else if (key == "k_residual_tol") s.k_residual_tol = detail::number(value, p);
        else if (key == "closed_tol") s.closed_tol = detail::number(value, p);
        else if (key == "h_grid") s.h_grid = static_cast<std::size_t>(detail::integer(value, p));
        else if (key == "loop_samples") s.loop_samples = static_cast<std::size_t>(detail::integer(value, p));
        else if (key == "bracket_width") s.bracket_width = detail::number(value, p);
        else if (key == "dedupe") s.dedupe = detail::number(value, p);
        else if (key == "fd_step") s.fd_step = detail::number(value, p);
        else if (key == "threads") s.threads = static_cast<unsigned>(detail::integer(value, p));
        else if (key == "oracle_resolution") base.oracle_resolution = static_cast<std::size_t>(detail::integer(value, p));
        else if (key == "seed") base.seed = static_cast<std::uint64_t>(detail::integer(value, p));
        else throw ParseError(p + ": unknown setting");
    }
    base.validate();
    return base;
}

inline std::string csv_header(std::size_t k) {
    std::string h = "sigma";
    for (std::size_t i = 1; i < k; ++i) h += ",c" + std::to_string(i);
    return h + ",residual,tangent_mismatch,margin,method,status";
}

/// k + 5 columns: sigma, k - 1 cuts, residual, tangent mismatch, margin, method, status.
inline std::string csv_row(const SolveResult& r) {
    const std::size_t k = r.sigma.size();
    std::string row = r.sigma.to_string();
    for (std::size_t i = 1; i < k; ++i) {
        row += ',';
        if (r.cuts.k() == k) row += format_number(r.cuts.at(i));
    }
    auto num = [&](double v) { return std::isfinite(v) ? format_number(v) : std::string(); };
    row += ',' + num(r.residual) + ',' + num(r.tangent_mismatch) + ',' + num(r.margin) + ',';
    row += to_string(r.method);
    row += ',';
    row += to_string(r.status);
    return row;
}

}  // namespace curveclose
