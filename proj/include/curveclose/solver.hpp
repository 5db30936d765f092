#pragma once

/**
 * @file solver.hpp
 * @brief Finding cuts that close a rearranged curve.
 *
 * Every solver works on a two-parameter family of cuts over the triangle
 * 0 <= h <= t <= 1 whose end point map G satisfies G(h, h) = G(h, 1) = gamma(1).
 * For fixed h the map t -> G(h, t) is therefore a loop. At h = 0 the loop winds
 * around the target a nonzero number of times, at h = 1 it has collapsed to a point,
 * so some intermediate loop passes through the target. The solver
 *   1. sweeps h on a coarse grid and records the winding number of each loop,
 *   2. bisects h inside every interval where the winding number changes,
 *   3. seeds Newton's method at the closest approach of the last loop,
 *   4. falls back to a local grid search when Newton stalls.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "curve.hpp"
#include "cuts.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "rearrange.hpp"
#include "winding.hpp"

namespace curveclose {

enum class Status { success, degenerate, rejected, inconclusive };
enum class Method { none, bisection, newton, grid };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::success: return "success";
        case Status::degenerate: return "degenerate";
        case Status::rejected: return "rejected";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::none: return "none";
        case Method::bisection: return "bisection";
        case Method::newton: return "newton";
        case Method::grid: return "grid";
    }
    return "?";
}

/// Tolerances are relative to the curve speed (i.e. its length).
struct SolverConfig {
    std::size_t h_grid = 256;
    std::size_t loop_samples = 512;
    std::size_t max_loop_samples = std::size_t{1} << 16;
    double bracket_width = 1e-6;
    double residual_tol = 1e-8;
    double k_residual_tol = 1e-6;
    double closed_tol = 1e-9;
    double fd_step = 1e-6;
    int max_newton = 50;
    std::size_t fallback_grid = 64;
    int fallback_rounds = 6;
    double dedupe = 1e-3;
    unsigned threads = 0;  ///< 0: hardware concurrency capped by CURVECLOSE_THREADS
};

struct SolveResult {
    Status status = Status::inconclusive;
    Perm sigma;
    Cuts cuts;
    std::array<double, 2> params{};  ///< (h, t) or (l1, l2) in the solved family
    double residual = std::numeric_limits<double>::infinity();
    double tangent_mismatch = 0.0;
    double margin = 0.0;
    int iterations = 0;
    Method method = Method::none;
    std::string message;

    bool ok() const { return status == Status::success; }
};

/// End point map restricted to a two-parameter family of cuts.
struct CutFamily {
    const TracedCurve* curve = nullptr;
    Perm sigma;
    std::function<Cuts(double, double)> cuts;

    Vec2 operator()(double h, double t) const { return endpoint_map(*curve, sigma, cuts(h, t)); }
};

inline CutFamily two_cut_family(const TracedCurve& curve) {
    return {&curve, Perm{1, 3, 2}, [](double h, double t) { return Cuts{h, t}; }};
}

/// Inflated cuts I[l1, l2] under the plan's working permutation.
inline CutFamily inflated_family(const TracedCurve& curve, const ReductionPlan& plan) {
    return {&curve, plan.working, [plan](double l1, double l2) { return inflate(plan, l1, l2); }};
}

/// One loop t -> G(h, t), t in [h, 1], seen from the target.
struct LoopScan {
    double h = 0.0;
    std::optional<int> winding;
    bool crossed = false;
    double min_distance = 0.0;
    double t_at_min = 0.0;
    std::size_t samples = 0;
    std::vector<double> params;     ///< kept only when requested
    std::vector<double> distances;  ///< kept only when requested
};

struct WindingProfile {
    std::vector<double> h;
    std::vector<std::optional<int>> winding;  ///< empty when the loop crossed the target
    std::vector<bool> crossed;
    std::vector<double> min_distance;
};

namespace detail {

inline void require_normalized(const TracedCurve& curve) {
    if (!curve.curve().normalized()) {
        throw CurveError("curve must be normalized (theta(0) = 0) before solving");
    }
}

struct Seed {
    double h = 0.0;
    double t = 0.0;
    int loop_change = 1;
};

struct Candidate {
    double h = 0.0;
    double t = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    Method method = Method::none;
};

class FamilySolver {
public:
    FamilySolver(const CutFamily& family, Vec2 target, const SolverConfig& cfg, double tol)
        : f_(family), target_(target), cfg_(cfg), tol_(tol) {
        scale_ = family.curve->speed();
        cross_eps_ = tol_;
        base_ = f_(1.0, 1.0);
    }

    double residual(double h, double t) const { return distance(f_(h, t), target_); }

    LoopScan scan(double h, bool keep = false) const {
        LoopScan s;
        s.h = h;
        if (h >= 1.0) {
            s.min_distance = distance(base_, target_);
            s.t_at_min = 1.0;
            s.crossed = s.min_distance <= cross_eps_;
            if (!s.crossed) s.winding = 0;
            return s;
        }
        WindingOptions opt;
        opt.on_loop_eps = 1e-12 * scale_;
        for (std::size_t n = cfg_.loop_samples;; n *= 2) {
            const LoopSamples loop = sample_loop([&](double t) { return f_(h, t); }, h, 1.0, n,
                                                 1e-9 * scale_);
            s.samples = n;
            s.min_distance = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < loop.points.size(); ++i) {
                const double d = distance(loop.points[i], target_);
                if (d < s.min_distance) {
                    s.min_distance = d;
                    s.t_at_min = loop.params[i];
                }
            }
            if (keep) {
                s.params = loop.params;
                s.distances.clear();
                for (const auto& p : loop.points) s.distances.push_back(distance(p, target_));
            }
            if (s.min_distance <= cross_eps_) {
                s.crossed = true;
                return s;
            }
            try {
                s.winding = winding_number(loop, target_, opt);
                return s;
            } catch (const WindingError&) {
                if (2 * n > cfg_.max_loop_samples) {
                    s.crossed = true;
                    return s;
                }
            }
        }
    }

    std::vector<LoopScan> sweep(std::size_t count) const {
        std::vector<LoopScan> scans(count + 1);
        parallel_for(count, resolve_threads(cfg_.threads), [&](std::size_t i) {
            scans[i] = scan(static_cast<double>(i) / static_cast<double>(count));
        });
        scans[count] = scan(1.0);
        return scans;
    }

    /// Seeds for every resolvable winding change in [a.h, b.h], smallest h first.
    void refine(const LoopScan& a, const LoopScan& b, bool first_only,
                std::vector<Seed>& seeds) const {
        if (a.crossed) {
            seeds.push_back({a.h, a.t_at_min});
            if (first_only) return;
        }
        if (b.crossed) {
            if (!a.crossed) seeds.push_back({b.h, b.t_at_min});
            return;
        }
        if (a.crossed || *a.winding == *b.winding) return;
        if (b.h - a.h <= cfg_.bracket_width) {
            const double mid = 0.5 * (a.h + b.h);
            const LoopScan m = scan(mid, true);
            const int change = std::abs(*a.winding - *b.winding);
            for (double t : closest_approaches(m, static_cast<std::size_t>(change) + 1)) {
                seeds.push_back({mid, t, change});
            }
            return;
        }
        const LoopScan m = scan(0.5 * (a.h + b.h));
        const std::size_t before = seeds.size();
        refine(a, m, first_only, seeds);
        if (first_only && seeds.size() > before) return;
        refine(m, b, first_only, seeds);
    }

    /// Local minima of the distance along a scanned loop, closest first.
    static std::vector<double> closest_approaches(const LoopScan& s, std::size_t count) {
        std::vector<std::pair<double, double>> minima;
        const auto& d = s.distances;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const bool left = i == 0 || d[i] <= d[i - 1];
            const bool right = i + 1 == d.size() || d[i] <= d[i + 1];
            if (left && right) minima.emplace_back(d[i], s.params[i]);
        }
        std::sort(minima.begin(), minima.end());
        std::vector<double> out;
        for (std::size_t i = 0; i < minima.size() && i < count; ++i) out.push_back(minima[i].second);
        if (out.empty()) out.push_back(s.t_at_min);
        return out;
    }

    static std::pair<double, double> clamp_domain(double h, double t) {
        h = std::clamp(h, 0.0, 1.0);
        t = std::clamp(t, h, 1.0);
        return {h, t};
    }

    /// Forward-difference Jacobian of G at (h, t); steps point into the domain.
    std::array<Vec2, 2> jacobian(double h, double t, double step) const {
        const Vec2 g = f_(h, t);
        const double sh = h + step <= t ? step : -step;
        const double st = t + step <= 1.0 ? step : -step;
        const double hh = std::max(0.0, h + sh);
        const double tt = std::max(h, t + st);
        return {(f_(hh, t) - g) * (1.0 / (hh - h)), (f_(h, tt) - g) * (1.0 / (tt - t))};
    }

    Candidate newton(double h, double t) const {
        Candidate c;
        std::tie(h, t) = clamp_domain(h, t);
        double r = residual(h, t);
        c = {h, t, r, 0, Method::newton};
        const double floor = 1e-15 * scale_;
        for (int it = 1; it <= cfg_.max_newton && r > floor; ++it) {
            const auto [jh, jt] = jacobian(h, t, cfg_.fd_step);
            const double det = cross(jh, jt);
            if (!std::isfinite(det) || std::fabs(det) < 1e-300) break;
            const Vec2 rhs = f_(h, t) - target_;
            const double dh = -cross(rhs, jt) / det;
            const double dt = -cross(jh, rhs) / det;
            double lambda = 1.0;
            bool improved = false;
            for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
                const auto [nh, nt] = clamp_domain(h + lambda * dh, t + lambda * dt);
                const double nr = residual(nh, nt);
                if (nr < r) {
                    h = nh;
                    t = nt;
                    r = nr;
                    improved = true;
                    break;
                }
            }
            c.iterations = it;
            if (!improved) break;
            c.h = h;
            c.t = t;
            c.residual = r;
        }
        return c;
    }

    /// Shrinking grid search around a seed, re-polished with Newton after every round.
    Candidate grid_fallback(double h, double t) const {
        Candidate best{h, t, residual(h, t), 0, Method::grid};
        double half = 0.02;
        const std::size_t n = cfg_.fallback_grid;
        for (int round = 0; round < cfg_.fallback_rounds && best.residual > tol_; ++round) {
            const double ch = best.h;
            const double ct = best.t;
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j <= n; ++j) {
                    const double gh = ch - half + 2.0 * half * static_cast<double>(i) / n;
                    const double gt = ct - half + 2.0 * half * static_cast<double>(j) / n;
                    if (gh < 0.0 || gt > 1.0 || gh > gt) continue;
                    const double r = residual(gh, gt);
                    if (r < best.residual) best = {gh, gt, r, best.iterations, Method::grid};
                }
            }
            Candidate polished = newton(best.h, best.t);
            polished.iterations += best.iterations;
            if (polished.residual < best.residual) {
                best = polished;
                best.method = Method::grid;
            }
            half *= 4.0 / static_cast<double>(n);
        }
        return best;
    }

    struct Outcome {
        std::vector<Candidate> solutions;
        std::vector<LoopScan> profile;
        bool bracketed = false;
    };

    Outcome run(bool first_only) const {
        Outcome out;
        out.profile = sweep(cfg_.h_grid);
        for (std::size_t i = 0; i + 1 < out.profile.size(); ++i) {
            const LoopScan& a = out.profile[i];
            const LoopScan& b = out.profile[i + 1];
            const bool change = a.crossed || b.crossed || *a.winding != *b.winding;
            if (!change) continue;
            out.bracketed = true;
            std::vector<Seed> seeds;
            refine(a, b, first_only, seeds);
            for (const Seed& s : seeds) {
                Candidate c = newton(s.h, s.t);
                if (c.residual > tol_) c = grid_fallback(c.h, c.t);
                if (c.residual > tol_) continue;
                if (!is_new(out.solutions, c)) continue;
                out.solutions.push_back(c);
                if (first_only) return out;
            }
        }
        return out;
    }

    bool is_new(const std::vector<Candidate>& found, const Candidate& c) const {
        for (const auto& f : found) {
            if (std::hypot(f.h - c.h, f.t - c.t) < cfg_.dedupe) return false;
        }
        return true;
    }

private:
    const CutFamily& f_;
    Vec2 target_;
    const SolverConfig& cfg_;
    double tol_;
    double scale_ = 1.0;
    double cross_eps_ = 0.0;
    Vec2 base_{};
};

inline SolveResult finish(const TracedCurve& curve, const Perm& sigma, const Cuts& cuts,
                          Vec2 target, const Candidate& c, Status status) {
    SolveResult r;
    r.status = status;
    r.sigma = sigma;
    r.cuts = cuts;
    r.params = {c.h, c.t};
    r.iterations = c.iterations;
    r.method = c.method;
    const Composite composite = rearranged(curve, sigma, cuts);
    r.residual = distance(composite.endpoint(), composite.start() + target);
    r.tangent_mismatch = tangent_mismatch(composite);
    r.margin = cuts.min_arc_length();
    return r;
}

inline SolveResult failed(Status status, const Perm& sigma, std::string message) {
    SolveResult r;
    r.status = status;
    r.sigma = sigma;
    r.message = std::move(message);
    return r;
}

inline bool is_closed(const TracedCurve& curve, const SolverConfig& cfg) {
    return norm(curve.endpoint()) <= cfg.closed_tol * curve.speed();
}

inline std::vector<SolveResult> solve_two_cut_family(const TracedCurve& curve, Vec2 target,
                                                     const SolverConfig& cfg, double tol,
                                                     bool first_only, Status& status,
                                                     std::string& message) {
    const CutFamily family = two_cut_family(curve);
    FamilySolver solver(family, target, cfg, tol * curve.speed());
    const auto outcome = solver.run(first_only);
    std::vector<SolveResult> results;
    for (const auto& c : outcome.solutions) {
        results.push_back(finish(curve, family.sigma, Cuts{c.h, c.t}, target, c, Status::success));
    }
    status = results.empty() ? Status::inconclusive : Status::success;
    if (results.empty()) {
        message = outcome.bracketed ? "winding change found but no zero converged"
                                    : "no winding change found in the sweep";
    }
    return results;
}

}  // namespace detail

/// Cuts (h, t) with the swap [1,3,2] closing the curve, for total turning 2*pi*m, m != 0.
inline SolveResult solve_two_cut(const TracedCurve& curve, const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const Perm swap{1, 3, 2};
    if (!turning_multiple(curve.curve())) {
        return detail::failed(Status::rejected, swap,
                              "total turning is not a nonzero multiple of 2*pi");
    }
    if (*turning_multiple(curve.curve()) == 0) {
        return detail::failed(Status::rejected, swap, "total turning is zero");
    }
    if (detail::is_closed(curve, cfg)) {
        auto r = detail::finish(curve, swap, Cuts{0.0, 0.0}, Vec2{}, {}, Status::degenerate);
        r.message = "curve is already closed";
        return r;
    }
    Status status;
    std::string message;
    auto all = detail::solve_two_cut_family(curve, Vec2{}, cfg, cfg.residual_tol, true, status,
                                            message);
    if (all.empty()) return detail::failed(status, swap, message);
    return all.front();
}

/// Like solve_two_cut, but steers the end point of the rearranged curve onto `target`.
inline SolveResult solve_two_cut_to_target(const TracedCurve& curve, Vec2 target,
                                           const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const Perm swap{1, 3, 2};
    const double c = curve.speed();
    if (distance(curve.endpoint(), target) <= cfg.residual_tol * c) {
        auto r = detail::finish(curve, swap, Cuts{0.0, 0.0}, target, {}, Status::success);
        r.message = "target is gamma(1); any cuts (h, h) reach it";
        return r;
    }
    const CutFamily family = two_cut_family(curve);
    const detail::FamilySolver probe(family, target, cfg, cfg.residual_tol * c);
    const LoopScan boundary = probe.scan(0.0);
    if (!boundary.crossed && boundary.winding && *boundary.winding == 0) {
        return detail::failed(Status::rejected, swap,
                              "boundary loop has winding number 0 about the target");
    }
    Status status;
    std::string message;
    auto all = detail::solve_two_cut_family(curve, target, cfg, cfg.residual_tol, true, status,
                                            message);
    if (all.empty()) return detail::failed(status, swap, message);
    return all.front();
}

/// One solution per resolvable winding change of the loop family, smallest h first.
inline std::vector<SolveResult> find_all_two_cut(const TracedCurve& curve,
                                                 const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const auto m = turning_multiple(curve.curve());
    if (!m || *m == 0) {
        throw std::invalid_argument("find_all_two_cut: total turning is not a nonzero multiple "
                                    "of 2*pi");
    }
    if (detail::is_closed(curve, cfg)) return {solve_two_cut(curve, cfg)};
    Status status;
    std::string message;
    return detail::solve_two_cut_family(curve, Vec2{}, cfg, cfg.residual_tol, false, status,
                                        message);
}

struct C0Check {
    bool holds = false;
    bool turning_ok = false;  ///< |theta(1) - theta(0)| >= 2*pi
    bool norm_ok = false;     ///< |gamma(1)| >= 2|sin(theta(1)/2)| max|gamma|
    double lhs = 0.0;
    double rhs = 0.0;
};

inline C0Check check_c0_condition(const TracedCurve& curve) {
    detail::require_normalized(curve);
    C0Check c;
    const double turning = total_turning(curve.curve());
    c.turning_ok = std::fabs(turning) >= two_pi * (1.0 - 1e-15);
    c.lhs = norm(curve.endpoint());
    c.rhs = 2.0 * std::fabs(std::sin(0.5 * curve.theta(1.0))) * curve.max_radius();
    c.norm_ok = c.lhs >= c.rhs;
    c.holds = c.turning_ok && c.norm_ok;
    return c;
}

/// Closure without tangent matching at the end point.
inline SolveResult solve_c0(const TracedCurve& curve, const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const Perm swap{1, 3, 2};
    const C0Check check = check_c0_condition(curve);
    if (!check.holds) {
        return detail::failed(Status::rejected, swap,
                              check.turning_ok ? "norm condition fails"
                                               : "total turning smaller than 2*pi in absolute value");
    }
    if (detail::is_closed(curve, cfg)) {
        auto r = detail::finish(curve, swap, Cuts{0.0, 0.0}, Vec2{}, {}, Status::degenerate);
        r.message = "curve is already closed";
        return r;
    }
    Status status;
    std::string message;
    auto all = detail::solve_two_cut_family(curve, Vec2{}, cfg, cfg.residual_tol, true, status,
                                            message);
    if (all.empty()) return detail::failed(status, swap, message);
    return all.front();
}

/// Proper cuts closing the k-arc rearrangement sigma; sigma must not be a cyclic shift.
inline SolveResult solve_k(const TracedCurve& curve, const Perm& sigma,
                           const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const std::size_t k = sigma.size();
    if (k < 3) return detail::failed(Status::rejected, sigma, "need at least 3 arcs");
    if (is_cyclic_shift(sigma)) {
        return detail::failed(Status::rejected, sigma,
                              "cyclic shift: the end point stays at distance |gamma(1)| from the "
                              "start for every choice of cuts (see certify_zk_nonclosure)");
    }
    const auto m = turning_multiple(curve.curve());
    if (!m || *m == 0) {
        return detail::failed(Status::rejected, sigma,
                              "total turning is not a nonzero multiple of 2*pi");
    }
    if (detail::is_closed(curve, cfg)) {
        return detail::failed(Status::rejected, sigma,
                              "curve is already closed; k-arc closing needs a non-closed curve");
    }
    const ReductionPlan plan = build_reduction_plan(sigma);
    const CutFamily family = inflated_family(curve, plan);
    const double tol = cfg.k_residual_tol * curve.speed();
    detail::FamilySolver solver(family, Vec2{}, cfg, tol);
    const auto outcome = solver.run(true);
    if (outcome.solutions.empty()) {
        return detail::failed(Status::inconclusive, sigma,
                              outcome.bracketed ? "winding change found but no zero converged"
                                                : "no winding change found in the sweep");
    }
    const auto& c = outcome.solutions.front();
    const Cuts cuts = inflate(plan, c.h, c.t);
    SolveResult r = detail::finish(curve, sigma, cuts, Vec2{}, c, Status::success);
    const double working = norm(endpoint_map(curve, plan.working, cuts));
    if (r.residual > tol || working > tol || !(r.margin > 0.0)) {
        r.status = Status::inconclusive;
        r.message = "solution failed verification under the original permutation";
    }
    return r;
}

struct ZkCertificate {
    double expected = 0.0;  ///< |gamma(1)|
    double min = 0.0;
    double max = 0.0;
    std::size_t samples = 0;
    bool degenerate = false;  ///< closed input: nothing to certify
    bool valid = false;
};

/// Samples |e_{z_h}(C)| over random cuts; for whole-turn curves it never leaves |gamma(1)|.
inline ZkCertificate certify_zk_nonclosure(const TracedCurve& curve, std::size_t k, std::size_t h,
                                           std::size_t samples, std::uint64_t seed = 1) {
    detail::require_normalized(curve);
    const Perm z = cyclic_shift(k, h);
    ZkCertificate cert;
    cert.expected = norm(curve.endpoint());
    cert.samples = samples;
    cert.min = std::numeric_limits<double>::infinity();
    cert.max = 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(k - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        for (double& v : c) v = u(rng);
        std::sort(c.begin(), c.end());
        const double r = norm(endpoint_map(curve, z, Cuts(c)));
        cert.min = std::min(cert.min, r);
        cert.max = std::max(cert.max, r);
    }
    const double tol = 1e-6 * curve.speed();
    cert.degenerate = cert.expected <= 1e-9 * curve.speed();
    cert.valid = !cert.degenerate && cert.max - cert.min <= tol && cert.min >= cert.expected - tol;
    return cert;
}

inline WindingProfile loop_winding_profile(const TracedCurve& curve, std::size_t h_count,
                                           const SolverConfig& cfg = {}) {
    detail::require_normalized(curve);
    const CutFamily family = two_cut_family(curve);
    const detail::FamilySolver solver(family, Vec2{}, cfg, cfg.residual_tol * curve.speed());
    WindingProfile p;
    for (const auto& s : solver.sweep(h_count)) {
        p.h.push_back(s.h);
        p.winding.push_back(s.winding);
        p.crossed.push_back(s.crossed);
        p.min_distance.push_back(s.min_distance);
    }
    return p;
}

struct OracleResult {
    Cuts cuts;
    std::array<double, 2> params{};  ///< (h, t) for two-parameter scans
    double residual = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
};

class OracleBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive scan of the triangle grid (i/n, j/n), i <= j, of a two-parameter family.
inline std::vector<std::vector<double>> scan_family(const CutFamily& family, std::size_t n,
                                                    unsigned threads = 0) {
    std::vector<std::vector<double>> r(n + 1);
    parallel_for(n + 1, resolve_threads(threads), [&](std::size_t i) {
        const double h = static_cast<double>(i) / static_cast<double>(n);
        r[i].assign(n + 1, std::numeric_limits<double>::infinity());
        for (std::size_t j = i; j <= n; ++j) {
            r[i][j] = norm(family(h, static_cast<double>(j) / static_cast<double>(n)));
        }
    });
    return r;
}

/// Grid local minima (8-neighbourhood inside the triangle) with residual <= threshold.
inline std::vector<OracleResult> oracle_grid_minima(const CutFamily& family, std::size_t n,
                                                    double threshold, unsigned threads = 0) {
    const auto r = scan_family(family, n, threads);
    std::vector<OracleResult> out;
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
            const double v = r[i][j];
            if (v > threshold) continue;
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const auto a = static_cast<long>(i) + di;
                    const auto b = static_cast<long>(j) + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < a || b > static_cast<long>(n)) continue;
                    if (r[a][b] < v) {
                        minimum = false;
                        break;
                    }
                }
            }
            if (!minimum) continue;
            OracleResult o;
            o.params = {static_cast<double>(i) / n, static_cast<double>(j) / n};
            o.cuts = family.cuts(o.params[0], o.params[1]);
            o.residual = v;
            out.push_back(o);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const OracleResult& a, const OracleResult& b) { return a.residual < b.residual; });
    return out;
}

/// Brute-force argmin of |e_sigma| on a lattice of D_k (k <= 4) or on the inflated
/// two-parameter family (k > 4, non-cyclic sigma).
inline OracleResult oracle_grid(const TracedCurve& curve, const Perm& sigma,
                                std::size_t resolution, std::size_t budget = 50'000'000,
                                unsigned threads = 0) {
    detail::require_normalized(curve);
    const std::size_t k = sigma.size();
    const std::size_t n = resolution;
    if (k < 2) throw std::invalid_argument("oracle_grid: need at least 2 arcs");
    OracleResult best;
    auto consider = [&](const std::vector<double>& c, std::array<double, 2> params) {
        const Cuts cuts(c);
        const double r = norm(endpoint_map(curve, sigma, cuts));
        ++best.evaluations;
        if (r < best.residual) {
            best.residual = r;
            best.cuts = cuts;
            best.params = params;
        }
    };
    auto d = [n](std::size_t i) { return static_cast<double>(i) / static_cast<double>(n); };
    std::size_t cost = 0;
    if (k == 2) cost = n + 1;
    else if (k == 3) cost = (n + 1) * (n + 2) / 2;
    else if (k == 4) cost = (n + 1) * (n + 2) * (n + 3) / 6;
    else cost = (n + 1) * (n + 2) / 2;
    if (cost > budget) {
        throw OracleBudgetError("oracle grid needs " + std::to_string(cost) +
                                " evaluations, budget is " + std::to_string(budget));
    }
    if (k == 2) {
        for (std::size_t i = 0; i <= n; ++i) consider({d(i)}, {d(i), 0.0});
    } else if (k == 3) {
        const CutFamily family{&curve, sigma, [](double h, double t) { return Cuts{h, t}; }};
        const auto r = scan_family(family, n, threads);
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = i; j <= n; ++j) {
                ++best.evaluations;
                if (r[i][j] < best.residual) {
                    best.residual = r[i][j];
                    best.params = {d(i), d(j)};
                    best.cuts = Cuts{d(i), d(j)};
                }
            }
        }
    } else if (k == 4) {
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = i; j <= n; ++j) {
                for (std::size_t l = j; l <= n; ++l) consider({d(i), d(j), d(l)}, {d(i), d(j)});
            }
        }
    } else {
        if (is_cyclic_shift(sigma)) {
            throw std::invalid_argument("oracle_grid: no two-parameter family for cyclic shifts "
                                        "with k > 4");
        }
        const ReductionPlan plan = build_reduction_plan(sigma);
        const CutFamily family{&curve, sigma,
                               [plan](double l1, double l2) { return inflate(plan, l1, l2); }};
        const auto r = scan_family(family, n, threads);
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = i; j <= n; ++j) {
                ++best.evaluations;
                if (r[i][j] < best.residual) {
                    best.residual = r[i][j];
                    best.params = {d(i), d(j)};
                    best.cuts = inflate(plan, d(i), d(j));
                }
            }
        }
    }
    return best;
}

}  // namespace curveclose
