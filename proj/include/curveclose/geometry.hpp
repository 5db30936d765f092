#pragma once

/**
 * @file geometry.hpp
 * @brief Small planar vector, rotation and rigid-motion kernel.
 */

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace curveclose {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Counter-clockwise rotation about the origin.
inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// x -> rotate(x, angle) + shift
struct RigidMotion {
    double angle = 0.0;
    Vec2 shift{};

    Vec2 operator()(Vec2 p) const { return rotate(p, angle) + shift; }

    /// (a * b)(p) == a(b(p))
    friend RigidMotion operator*(const RigidMotion& a, const RigidMotion& b) {
        return {a.angle + b.angle, a(b.shift)};
    }

    /// Motion taking `from` to `to` while turning direction `from_angle` into `to_angle`.
    static RigidMotion matching(Vec2 from, double from_angle, Vec2 to, double to_angle) {
        const double angle = to_angle - from_angle;
        return {angle, to - rotate(from, angle)};
    }
};

/// Smallest |d| with d == angle (mod 2*pi).
inline double wrap_abs(double angle) { return std::fabs(std::remainder(angle, two_pi)); }

namespace detail {

// Knuth two-sum: a + b == s + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bv = s - a;
    e = (a - (s - bv)) + (b - bv);
}

}  // namespace detail

/// Sum of doubles carried as a nonoverlapping expansion (Shewchuk), rounded once at the end.
/// Telescoping sums such as sum(theta(b_j) - theta(a_j)) over a partition cancel exactly.
inline double exact_sum(std::span<const double> terms) {
    std::vector<double> expansion;
    expansion.reserve(terms.size());
    for (double x : terms) {
        std::size_t out = 0;
        double q = x;
        for (double component : expansion) {
            double s, e;
            detail::two_sum(q, component, s, e);
            if (e != 0.0) expansion[out++] = e;
            q = s;
        }
        expansion.resize(out);
        if (q != 0.0) expansion.push_back(q);
    }
    double total = 0.0;
    for (double component : expansion) total += component;
    return total;
}

}  // namespace curveclose
