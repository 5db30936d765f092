#pragma once

/**
 * @file winding.hpp
 * @brief Winding numbers of sampled planar loops.
 */

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace curveclose {

class WindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered loop samples; the first and last point must be identical.
struct LoopSamples {
    std::vector<Vec2> points;
    std::vector<double> params;

    bool closed() const { return points.size() >= 2 && points.front() == points.back(); }
};

struct WindingOptions {
    double on_loop_eps = 1e-12;  ///< absolute; callers scale by the curve speed
    double max_step = std::numbers::pi / 2.0;
    double max_rounding_residual = 0.1;
};

/// Signed angle swept by consecutive samples around `p`, or throws if the sampling is too
/// coarse (a step of max_step or more) or a sample lies on `p`.
inline double swept_angle(const std::vector<Vec2>& points, Vec2 p, const WindingOptions& opt = {}) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Vec2 a = points[i] - p;
        const Vec2 b = points[i + 1] - p;
        if (norm(a) <= opt.on_loop_eps || norm(b) <= opt.on_loop_eps) {
            throw WindingError("query point lies on the loop (sample " + std::to_string(i) + ")");
        }
        const double step = std::atan2(cross(a, b), dot(a, b));
        if (std::fabs(step) >= opt.max_step) {
            throw WindingError("loop sampling too coarse: angular step " + std::to_string(step) +
                               " at sample " + std::to_string(i));
        }
        total += step;
    }
    return total;
}

inline int winding_number(const LoopSamples& loop, Vec2 p, const WindingOptions& opt = {}) {
    if (!loop.closed()) throw WindingError("loop samples are not closed");
    const double turns = swept_angle(loop.points, p, opt) / two_pi;
    const double rounded = std::nearbyint(turns);
    if (std::fabs(turns - rounded) >= opt.max_rounding_residual) {
        throw WindingError("winding does not round to an integer (" + std::to_string(turns) + ")");
    }
    return static_cast<int>(rounded);
}

/// Samples `f` on [a, b] with n + 1 points; if f(a) == f(b) up to `snap` the last point is
/// snapped onto the first so the result is an exact loop.
template <class F>
LoopSamples sample_loop(F&& f, double a, double b, std::size_t n, double snap = 0.0) {
    LoopSamples loop;
    loop.points.reserve(n + 1);
    loop.params.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        loop.params.push_back(t);
        loop.points.push_back(f(t));
    }
    if (distance(loop.points.front(), loop.points.back()) <= snap) {
        loop.points.back() = loop.points.front();
    }
    return loop;
}

}  // namespace curveclose
