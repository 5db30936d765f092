#pragma once

/**
 * @file rearrange.hpp
 * @brief Splitting a curve into arcs and regluing them with matching tangents.
 *
 * Two independent routes compute the end point of a rearranged curve:
 *  - `rearranged` builds the composite piece by piece with rigid motions (the `*`
 *    concatenation), which is what rendering and serialization use;
 *  - `endpoint_map` sums rotated chords in O(k) and is what the solvers evaluate.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve.hpp"
#include "cuts.hpp"
#include "geometry.hpp"
#include "perm.hpp"

namespace curveclose {

class RearrangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arc [begin, end] of a traced curve. Zero-length arcs keep the tangent angle of their point.
struct Arc {
    const TracedCurve* parent = nullptr;
    int id = 0;
    double begin = 0.0;
    double end = 0.0;
    double entry_angle = 0.0;
    double exit_angle = 0.0;
    Vec2 chord{};

    bool degenerate() const { return begin == end; }
};

inline std::vector<Arc> split(const TracedCurve& curve, const Cuts& cuts) {
    std::vector<Arc> arcs;
    arcs.reserve(cuts.k());
    for (std::size_t i = 1; i <= cuts.k(); ++i) {
        Arc a;
        a.parent = &curve;
        a.id = static_cast<int>(i);
        a.begin = cuts.at(i - 1);
        a.end = cuts.at(i);
        a.entry_angle = curve.theta(a.begin);
        a.exit_angle = a.begin == a.end ? a.entry_angle : curve.theta(a.end);
        a.chord = a.begin == a.end ? Vec2{} : curve.chord(a.begin, a.end);
        arcs.push_back(a);
    }
    return arcs;
}

/// A chain of rigidly moved arcs. Refers to the parent curves, which must outlive it.
class Composite {
public:
    struct Piece {
        const TracedCurve* parent = nullptr;
        int arc_id = 0;
        double begin = 0.0;
        double end = 0.0;
        RigidMotion motion;  ///< parent coordinates -> composite coordinates

        Vec2 point(double u) const { return motion(parent->position(u)); }
        double angle(double u) const { return parent->theta(u) + motion.angle; }
        Vec2 start() const { return point(begin); }
        double entry_angle() const { return angle(begin); }
        double exit_angle() const { return begin == end ? entry_angle() : angle(end); }
        Vec2 finish() const { return begin == end ? start() : motion(parent->position(end)); }

        /// Start, every parent grid node strictly inside, finish.
        std::vector<Vec2> path() const {
            std::vector<Vec2> pts{start()};
            const auto n = parent->resolution();
            const auto first = static_cast<std::size_t>(std::floor(begin * static_cast<double>(n))) + 1;
            for (std::size_t i = first; i < n && parent->node(i) < end; ++i) {
                pts.push_back(motion(parent->nodes()[i]));
            }
            pts.push_back(finish());
            return pts;
        }
    };

    Composite() = default;

    static Composite from_arc(const Arc& arc) {
        Composite c;
        c.pieces_.push_back({arc.parent, arc.id, arc.begin, arc.end, RigidMotion{}});
        return c;
    }

    static Composite from_curve(const TracedCurve& curve) {
        return from_arc(split(curve, Cuts{}).front());
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    double speed() const { return pieces_.front().parent->speed(); }
    Vec2 start() const { return pieces_.front().start(); }
    Vec2 endpoint() const { return pieces_.back().finish(); }
    double entry_angle() const { return pieces_.front().entry_angle(); }
    double exit_angle() const { return pieces_.back().exit_angle(); }

    /// Parameter length (sum of arc lengths in parent parameter units).
    double length() const {
        double l = 0.0;
        for (const auto& p : pieces_) l += p.end - p.begin;
        return l;
    }

    /// Sum of the pieces' turning, accumulated exactly so a permuted partition of [0,1]
    /// reproduces theta(1) - theta(0) bit for bit.
    double total_turning() const {
        std::vector<double> terms;
        terms.reserve(2 * pieces_.size());
        for (const auto& p : pieces_) {
            if (p.begin == p.end) continue;
            terms.push_back(p.parent->theta(p.end));
            terms.push_back(-p.parent->theta(p.begin));
        }
        return exact_sum(terms);
    }

    /// Applies a rigid motion to the whole chain.
    Composite moved(const RigidMotion& m) const {
        Composite out = *this;
        for (auto& p : out.pieces_) p.motion = m * p.motion;
        return out;
    }

    /// Start at the origin with tangent angle 0.
    Composite normalized() const {
        return moved(RigidMotion::matching(start(), entry_angle(), Vec2{}, 0.0));
    }

    /// Locates composite parameter s in [0, length()].
    std::pair<const Piece*, double> locate(double s) const {
        double offset = 0.0;
        for (const auto& p : pieces_) {
            const double len = p.end - p.begin;
            if (s <= offset + len) return {&p, std::clamp(p.begin + (s - offset), p.begin, p.end)};
            offset += len;
        }
        return {&pieces_.back(), pieces_.back().end};
    }

    Vec2 position(double s) const {
        const auto [piece, u] = locate(s);
        return piece->point(u);
    }

    double theta(double s) const {
        const auto [piece, u] = locate(s);
        return piece->angle(u);
    }

    /// Full polyline through every parent grid node of every piece.
    std::vector<Vec2> path() const {
        std::vector<Vec2> pts;
        for (const auto& p : pieces_) {
            const auto piece = p.path();
            pts.insert(pts.end(), piece.begin(), piece.end());
        }
        return pts;
    }

    friend Composite concat(const Composite& a, const Composite& b);

private:
    std::vector<Piece> pieces_;
};

/// a * b: moves b so that its start and tangent coincide with a's end and tangent.
inline Composite concat(const Composite& a, const Composite& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const double sa = a.speed();
    const double sb = b.speed();
    if (std::fabs(sa - sb) > 1e-12 * std::max(sa, sb)) {
        throw RearrangeError("concat: speed mismatch (" + std::to_string(sa) + " vs " +
                             std::to_string(sb) + ")");
    }
    const RigidMotion glue =
        RigidMotion::matching(b.start(), b.entry_angle(), a.endpoint(), a.exit_angle());
    Composite out = a;
    const Composite moved = b.moved(glue);
    out.pieces_.insert(out.pieces_.end(), moved.pieces_.begin(), moved.pieces_.end());
    return out;
}

inline void check_dimensions(const Perm& sigma, const Cuts& cuts) {
    if (sigma.size() != cuts.k()) {
        throw RearrangeError("permutation has " + std::to_string(sigma.size()) +
                             " entries but cuts define " + std::to_string(cuts.k()) + " arcs");
    }
}

/// gamma_{sigma(1)} * ... * gamma_{sigma(k)}, moved to start at the origin with angle 0.
inline Composite rearranged(const TracedCurve& curve, const Perm& sigma, const Cuts& cuts) {
    check_dimensions(sigma, cuts);
    const auto arcs = split(curve, cuts);
    Composite out;
    for (std::size_t j = 1; j <= sigma.size(); ++j) {
        out = concat(out, Composite::from_arc(arcs[sigma(j) - 1]));
    }
    return out.normalized();
}

/// End point of the normalized rearranged curve via the rotated chord sum.
inline Vec2 endpoint_map(const TracedCurve& curve, const Perm& sigma, const Cuts& cuts) {
    check_dimensions(sigma, cuts);
    Vec2 acc{};
    double heading = 0.0;
    for (std::size_t j = 1; j <= sigma.size(); ++j) {
        const auto arc = static_cast<std::size_t>(sigma(j));
        const double a = cuts.at(arc - 1);
        const double b = cuts.at(arc);
        if (a == b) continue;
        const double enter = curve.theta(a);
        const double leave = curve.theta(b);
        acc += rotate(curve.position(b) - curve.position(a), heading - enter);
        heading += leave - enter;
    }
    return acc;
}

/// Two-cut end point for cuts (0, t): R(-theta(t)) gamma(1). Needs whole turns.
inline Vec2 e3_closed_form(const TracedCurve& curve, double t) {
    if (!turning_multiple(curve.curve())) {
        throw RearrangeError("closed form needs total turning equal to a multiple of 2*pi");
    }
    return rotate(curve.endpoint(), -curve.theta(t));
}

inline double tangent_mismatch(const Composite& c) { return wrap_abs(c.total_turning()); }

inline double tangent_mismatch(const TurningCurve& c) { return wrap_abs(total_turning(c)); }

}  // namespace curveclose
