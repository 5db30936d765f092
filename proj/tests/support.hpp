#pragma once

/**
 * @file support.hpp
 * @brief Test-side oracles that share no numerical code with the library.
 *
 * Angles are evaluated straight from the Fourier formula and integrated with composite
 * Simpson, so agreement with the library's trapezoid tables is a genuine cross-check.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "curveclose/curveclose.hpp"

namespace testing_support {

namespace cc = curveclose;

using Theta = std::function<double(double)>;

constexpr double tau = 2.0 * std::numbers::pi;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Normalized angle function of a Fourier curve, evaluated from the formula.
inline Theta fourier_formula(int m, const std::vector<cc::FourierTerm>& terms) {
    double base = 0.0;
    for (const auto& t : terms) base += t.amp * std::sin(t.phase);
    return [=](double s) {
        double v = tau * m * s;
        for (const auto& t : terms) v += t.amp * std::sin(tau * t.freq * s + t.phase);
        return v - base;
    };
}

inline Theta formula_of(const cc::TurningCurve& curve) {
    const auto& f = std::get<cc::FourierTheta>(curve.theta_spec());
    return fourier_formula(f.winding, f.terms);
}

/// speed * integral_a^b (cos, sin)(theta(u) + turn) du by composite Simpson with n panels.
inline Point simpson(const Theta& theta, double speed, double a, double b, std::size_t n,
                     double turn = 0.0) {
    if (n % 2) ++n;
    if (b <= a) return {};
    const double h = (b - a) / static_cast<double>(n);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double ang = theta(a + h * static_cast<double>(i)) + turn;
        sx += w * std::cos(ang);
        sy += w * std::sin(ang);
    }
    return {speed * sx * h / 3.0, speed * sy * h / 3.0};
}

/// End point of the rearranged curve built directly from the definition: each arc's angle
/// function is shifted so it starts where the previous one ended, then integrated.
inline Point rearranged_endpoint(const Theta& theta, double speed, const cc::Perm& sigma,
                                 const std::vector<double>& cuts, std::size_t panels_per_unit) {
    std::vector<double> c{0.0};
    c.insert(c.end(), cuts.begin(), cuts.end());
    c.push_back(1.0);
    Point acc;
    double heading = 0.0;
    for (std::size_t j = 1; j <= sigma.size(); ++j) {
        const double a = c[static_cast<std::size_t>(sigma(j)) - 1];
        const double b = c[static_cast<std::size_t>(sigma(j))];
        if (b <= a) continue;
        const auto panels = std::max<std::size_t>(
            64, static_cast<std::size_t>((b - a) * static_cast<double>(panels_per_unit)));
        const double shift = heading - theta(a);
        const Point p = simpson(theta, speed, a, b, panels, shift);
        acc.x += p.x;
        acc.y += p.y;
        heading = theta(b) + shift;
    }
    return acc;
}

inline double distance(Point a, cc::Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Canonical m = 1 test curve theta(s) = 2 pi s + 0.9 sin(2 pi s).
inline cc::TurningCurve swirl() {
    return cc::normalize(cc::TurningCurve::fourier(1.0, 1, {{0.9, 1.0, 0.0}}));
}

/// Signed angle swept around the origin by a densely sampled loop, in turns.
inline double turns_about_origin(const std::function<cc::Vec2(double)>& f, double a, double b,
                                 std::size_t n) {
    double total = 0.0;
    cc::Vec2 prev = f(a);
    for (std::size_t i = 1; i <= n; ++i) {
        const cc::Vec2 p = f(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
        total += std::atan2(prev.x * p.y - prev.y * p.x, prev.x * p.x + prev.y * p.y);
        prev = p;
    }
    return total / tau;
}

/// Sorted uniform random cuts for k arcs.
inline std::vector<double> random_cuts(std::size_t k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(k - 1);
    for (double& v : c) v = u(rng);
    std::sort(c.begin(), c.end());
    return c;
}

inline cc::Perm random_perm(std::size_t k, std::mt19937_64& rng) {
    std::vector<int> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<int>(i + 1);
    std::shuffle(p.begin(), p.end(), rng);
    return cc::Perm(p);
}

/// All permutations of 1..k in lexicographic order.
inline std::vector<cc::Perm> all_perms(std::size_t k) {
    std::vector<int> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<int>(i + 1);
    std::vector<cc::Perm> out;
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace testing_support
