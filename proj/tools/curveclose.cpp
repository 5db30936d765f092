// curveclose: command line front end.
//
// Exit codes: 0 success, 1 usage or input error, 2 rejected (no cuts can exist),
// 3 inconclusive (numerical failure).

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "curveclose/curveclose.hpp"

namespace cc = curveclose;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_rejected = 2;
constexpr int exit_inconclusive = 3;

int exit_code(cc::Status s) {
    switch (s) {
        case cc::Status::success:
        case cc::Status::degenerate: return exit_ok;
        case cc::Status::rejected: return exit_rejected;
        case cc::Status::inconclusive: return exit_inconclusive;
    }
    return exit_error;
}

struct Globals {
    std::string config_path;
    std::optional<std::size_t> resolution;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;

    cc::RunConfig load() const {
        cc::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = cc::config_from_json(cc::parse_json_text(cc::read_file(config_path)));
        }
        if (resolution) cfg.resolution = *resolution;
        if (tol) {
            cfg.solver.residual_tol = *tol;
            cfg.solver.k_residual_tol = *tol;
        }
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
};

cc::TracedCurve load_traced(const std::string& path, const cc::RunConfig& cfg) {
    return cc::TracedCurve(cc::normalize(cc::load_curve(path)), cfg.resolution);
}

std::vector<double> parse_numbers(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw std::invalid_argument("bad number '" + token + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        cc::write_file(path, text);
    }
}

int cmd_analyze(const Globals& g, const std::string& file, bool as_json) {
    const auto cfg = g.load();
    const auto curve = load_traced(file, cfg);
    const double turning = cc::total_turning(curve.curve());
    const auto m = cc::turning_multiple(curve.curve());
    const cc::Vec2 end = curve.endpoint();
    const double gap = cc::norm(end);
    const bool closed = gap <= cfg.solver.closed_tol * curve.speed();
    const auto c0 = cc::check_c0_condition(curve);
    const bool whole_turns = m && *m != 0;

    nlohmann::json report;
    report["speed"] = curve.speed();
    report["total_turning"] = turning;
    report["turning_multiple"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
    report["endpoint"] = {end.x, end.y};
    report["endpoint_norm"] = gap;
    report["closed"] = closed;
    report["max_radius"] = curve.max_radius();
    report["c0_condition"] = {{"holds", c0.holds}, {"lhs", c0.lhs}, {"rhs", c0.rhs},
                              {"turning_ok", c0.turning_ok}, {"norm_ok", c0.norm_ok}};
    report["solvers"] = {{"two_cut", whole_turns && !closed},
                         {"k_arc", whole_turns && !closed},
                         {"c0", c0.holds && !closed}};
    if (as_json) {
        std::cout << report.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "speed            " << cc::format_number(curve.speed()) << '\n'
              << "total turning    " << cc::format_number(turning) << '\n'
              << "turning multiple " << (m ? std::to_string(*m) : std::string("none")) << '\n'
              << "endpoint         (" << cc::format_number(end.x) << ", "
              << cc::format_number(end.y) << ")\n"
              << "|gamma(1)|       " << cc::format_number(gap) << (closed ? "  (closed)" : "")
              << '\n'
              << "max radius       " << cc::format_number(curve.max_radius()) << '\n'
              << "C0 condition     " << (c0.holds ? "holds" : "fails") << " (lhs "
              << cc::format_number(c0.lhs) << ", rhs " << cc::format_number(c0.rhs) << ")\n";
    if (closed) {
        std::cout << "solvers          curve already closed\n";
    } else if (!whole_turns && !c0.holds) {
        std::cout << "solvers          none applicable\n";
    } else {
        std::cout << "solvers          " << (whole_turns ? "two-cut, k-arc" : "")
                  << (whole_turns && c0.holds ? ", " : "") << (c0.holds ? "c0" : "") << '\n';
    }
    return exit_ok;
}

int cmd_close(const Globals& g, const std::string& file, std::size_t k, std::string sigma_text,
              const std::string& mode, const std::string& out, const std::string& svg) {
    const auto cfg = g.load();
    const auto curve = load_traced(file, cfg);
    if (sigma_text.empty()) {
        if (k != 0 && k != 3) throw std::invalid_argument("--sigma is required when --k is not 3");
        sigma_text = "1 3 2";
    }
    const cc::Perm sigma = cc::Perm::parse(sigma_text);
    if (k == 0) k = sigma.size();  // --k not given: take it from --sigma
    if (sigma.size() != k) {
        throw std::invalid_argument("--sigma has " + std::to_string(sigma.size()) +
                                    " entries but --k is " + std::to_string(k));
    }
    const cc::Perm swap{1, 3, 2};
    std::vector<cc::SolveResult> results;
    if (mode == "all") {
        if (sigma != swap) throw std::invalid_argument("--mode all supports only sigma = 1 3 2");
        const auto m = cc::turning_multiple(curve.curve());
        if (!m || *m == 0) {
            std::cerr << "rejected: total turning is not a nonzero multiple of 2*pi\n";
            return exit_rejected;
        }
        results = cc::find_all_two_cut(curve, cfg.solver);
    } else if (mode == "c0") {
        if (sigma != swap) throw std::invalid_argument("--mode c0 supports only sigma = 1 3 2");
        results.push_back(cc::solve_c0(curve, cfg.solver));
    } else if (sigma == swap) {
        results.push_back(cc::solve_two_cut(curve, cfg.solver));
    } else {
        results.push_back(cc::solve_k(curve, sigma, cfg.solver));
    }

    std::string csv = cc::csv_header(k) + '\n';
    int code = results.empty() ? exit_inconclusive : exit_ok;
    for (const auto& r : results) {
        if (!r.message.empty()) std::cerr << cc::to_string(r.status) << ": " << r.message << '\n';
        if (r.status == cc::Status::success || r.status == cc::Status::degenerate) {
            csv += cc::csv_row(r) + '\n';
        } else {
            code = exit_code(r.status);
        }
    }
    emit(out, csv);
    if (!svg.empty() && !results.empty() && results.front().cuts.k() == k) {
        cc::write_file(svg, cc::render_svg(curve, sigma, results.front().cuts));
    }
    return code;
}

int cmd_reduce(const std::string& sigma_text) {
    const cc::Perm sigma = cc::Perm::parse(sigma_text);
    if (cc::is_cyclic_shift(sigma)) {
        std::cout << "rejected: " << sigma.to_string()
                  << " is a cyclic shift; no cuts can close a non-closed curve\n";
        return exit_rejected;
    }
    const auto plan = cc::build_reduction_plan(sigma);
    std::cout << "sigma      " << plan.original.to_string() << '\n'
              << "pre-shift  z_" << plan.shift << " -> working " << plan.working.to_string()
              << '\n'
              << "chain      " << (plan.steps.empty() ? "(empty)" : plan.chain_string()) << '\n';
    for (const auto& s : plan.steps) {
        std::cout << "  F_" << s.position << ": collapse arc " << s.collapsed_arc << " -> "
                  << s.result.to_string() << '\n';
    }
    std::cout << "survivors  " << plan.survivors[0] << ' ' << plan.survivors[1] << ' '
              << plan.survivors[2] << '\n'
              << "q          " << plan.q[0] << ' ' << plan.q[1] << ' ' << plan.q[2] << '\n'
              << "induced    " << plan.induced.to_string() << '\n';
    return exit_ok;
}

int cmd_render(const Globals& g, const std::string& file, const std::string& cuts_text,
               const std::string& sigma_text, const std::string& out) {
    const auto cfg = g.load();
    const auto curve = load_traced(file, cfg);
    const cc::Cuts cuts(parse_numbers(cuts_text));
    const cc::Perm sigma =
        sigma_text.empty() ? cc::Perm::identity(cuts.k()) : cc::Perm::parse(sigma_text);
    emit(out, cc::render_svg(curve, sigma, cuts));
    return exit_ok;
}

int cmd_oracle(const Globals& g, const std::string& file, const std::string& sigma_text,
               std::optional<std::size_t> grid) {
    const auto cfg = g.load();
    const auto curve = load_traced(file, cfg);
    const cc::Perm sigma = cc::Perm::parse(sigma_text);
    const auto r = cc::oracle_grid(curve, sigma, grid.value_or(cfg.oracle_resolution), 50'000'000,
                                   cfg.solver.threads);
    std::string line = sigma.to_string();
    for (double c : r.cuts.values()) line += ',' + cc::format_number(c);
    std::cout << line << ',' << cc::format_number(r.residual) << ',' << r.evaluations << '\n';
    return exit_ok;
}

int cmd_generate(const Globals& g, int winding, double speed, const std::string& out) {
    const auto cfg = g.load();
    std::mt19937_64 rng(cfg.seed);
    cc::FourierFamily family;
    family.speed = speed;
    const auto curve = cc::random_fourier_curve(winding, rng, family);
    emit(out, cc::curve_to_json(curve).dump(2) + '\n');
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Close planar curves by cutting them into arcs and regluing the arcs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON file with run settings");
    app.add_option("--resolution", g.resolution, "quadrature nodes (power of two >= 64)");
    app.add_option("--tol", g.tol, "residual tolerance relative to curve length");
    app.add_option("--seed", g.seed, "seed for generated curves");

    std::string file, sigma, mode = "c1", out, svg, cuts;
    std::size_t k = 3;
    bool as_json = false;
    std::optional<std::size_t> grid;
    int winding = 1;
    double speed = 1.0;

    auto* analyze = app.add_subcommand("analyze", "report turning, closure and solver applicability");
    analyze->add_option("curve", file, "curve JSON")->required();
    analyze->add_flag("--json", as_json, "print the report as JSON");

    auto* close = app.add_subcommand("close", "find cuts that close a rearrangement");
    close->add_option("curve", file, "curve JSON")->required();
    close->add_option("--k", k, "number of arcs (default: length of --sigma, else 3)")->check(CLI::Range(3, 64));
    close->add_option("--sigma", sigma, "arc order in one-line notation, e.g. \"1 3 2\"");
    close->add_option("--mode", mode, "c1 (tangent-continuous), c0, or all (every two-cut zero)")
        ->check(CLI::IsMember({"c1", "c0", "all"}));
    close->add_option("--out", out, "CSV output (default stdout)");
    close->add_option("--svg", svg, "also render the first solution");

    auto* reduce = app.add_subcommand("reduce", "print the reduction of a permutation to [1,3,2]");
    reduce->add_option("--sigma", sigma, "permutation in one-line notation")->required();

    auto* render = app.add_subcommand("render", "draw a curve and a rearrangement as SVG");
    render->add_option("curve", file, "curve JSON")->required();
    render->add_option("--cuts", cuts, "cut values, e.g. \"0.3 0.6\"")->required();
    render->add_option("--sigma", sigma, "arc order (default identity)");
    render->add_option("--out", out, "SVG output (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "brute-force grid minimum of the end point distance");
    oracle->add_option("curve", file, "curve JSON")->required();
    oracle->add_option("--sigma", sigma, "arc order")->required();
    oracle->add_option("--grid", grid, "grid resolution per axis");

    auto* generate = app.add_subcommand("generate", "write a random Fourier test curve");
    generate->add_option("--winding", winding, "total turning in full turns");
    generate->add_option("--speed", speed, "curve length");
    generate->add_option("--out", out, "curve JSON output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(g, file, as_json);
        if (*close) return cmd_close(g, file, close->count("--k") ? k : 0, sigma, mode, out, svg);
        if (*reduce) return cmd_reduce(sigma);
        if (*render) return cmd_render(g, file, cuts, sigma, out);
        if (*oracle) return cmd_oracle(g, file, sigma, grid);
        if (*generate) return cmd_generate(g, winding, speed, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
