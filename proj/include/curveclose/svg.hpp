#pragma once

/**
 * @file svg.hpp
 * @brief Deterministic SVG figures of a curve and one of its rearrangements.
 *
 * Both curves share one similarity transform into the fixed viewBox 0 0 1000 1000
 * (5% padding), so the rearranged curve starts where the original does. Arcs carry the
 * same colour in both drawings; cut points are dots, zero-length arcs are rings.
 */

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "cuts.hpp"
#include "io.hpp"
#include "perm.hpp"
#include "rearrange.hpp"

namespace curveclose {

struct SvgStyle {
    double view = 1000.0;
    double padding = 0.05;
    double original_width = 3.0;
    double rearranged_width = 5.0;
    std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
    const char* original_color = "#9e9e9e";
};

namespace detail {

struct ViewTransform {
    double scale = 1.0;
    Vec2 min{};
    double view = 1000.0;
    double pad = 50.0;
    Vec2 offset{};

    Vec2 operator()(Vec2 p) const {
        const Vec2 q = (p - min) * scale + offset;
        return {q.x, view - q.y};  // SVG y axis points down
    }
};

inline ViewTransform fit(const std::vector<Vec2>& pts, const SvgStyle& style) {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-lo.x, -lo.y};
    for (const auto& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    ViewTransform t;
    t.view = style.view;
    t.pad = style.padding * style.view;
    const double inner = style.view - 2.0 * t.pad;
    const double extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-12});
    t.scale = inner / extent;
    t.min = lo;
    t.offset = {t.pad + 0.5 * (inner - (hi.x - lo.x) * t.scale),
                t.pad + 0.5 * (inner - (hi.y - lo.y) * t.scale)};
    return t;
}

inline std::string coord(double v) { return format_fixed(v, 3); }

inline std::string polyline(const std::vector<Vec2>& pts, const ViewTransform& t,
                            const char* color, double width) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2 p = t(pts[i]);
        d += (i ? " L" : "M") + coord(p.x) + ' ' + coord(p.y);
    }
    return "  <path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
           coord(width) + "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
}

inline std::string dot(Vec2 p, const ViewTransform& t, const char* color, double r, bool ring) {
    const Vec2 q = t(p);
    std::string s = "  <circle cx=\"" + coord(q.x) + "\" cy=\"" + coord(q.y) + "\" r=\"" +
                    coord(r) + "\"";
    if (ring) {
        s += " fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2.000\"/>\n";
    } else {
        s += " fill=\"" + std::string(color) + "\"/>\n";
    }
    return s;
}

}  // namespace detail

/// Original curve (grey, arcs outlined in their colours) and the rearranged curve.
inline std::string render_svg(const TracedCurve& curve, const Perm& sigma, const Cuts& cuts,
                              const SvgStyle& style = {}) {
    const Composite original = [&] {
        Composite c;
        for (const auto& arc : split(curve, cuts)) c = concat(c, Composite::from_arc(arc));
        return c;
    }();
    const Composite moved = rearranged(curve, sigma, cuts);

    std::vector<Vec2> all = original.path();
    const auto more = moved.path();
    all.insert(all.end(), more.begin(), more.end());
    const auto t = detail::fit(all, style);

    auto color = [&](int arc) { return style.palette[(arc - 1) % style.palette.size()]; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
           "width=\"1000\" height=\"1000\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
    svg += "  <g id=\"original\" opacity=\"0.6\">\n";
    svg += detail::polyline(original.path(), t, style.original_color, style.original_width + 4.0);
    for (const auto& piece : original.pieces()) {
        if (piece.begin == piece.end) continue;
        svg += detail::polyline(piece.path(), t, color(piece.arc_id),
                                style.original_width);
    }
    for (std::size_t i = 1; i < cuts.k(); ++i) {
        svg += detail::dot(curve.position(cuts.at(i)), t, "#000000", 6.0, false);
    }
    svg += "  </g>\n";
    svg += "  <g id=\"rearranged\">\n";
    for (const auto& piece : moved.pieces()) {
        if (piece.begin == piece.end) {
            svg += detail::dot(piece.start(), t, color(piece.arc_id), 9.0, true);
            continue;
        }
        svg += detail::polyline(piece.path(), t, color(piece.arc_id),
                                style.rearranged_width);
    }
    svg += detail::dot(moved.start(), t, "#000000", 5.0, false);
    svg += detail::dot(moved.endpoint(), t, "#000000", 11.0, true);
    svg += "  </g>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace curveclose
