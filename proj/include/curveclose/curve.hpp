#pragma once

/**
 * @file curve.hpp
 * @brief Constant-speed planar curves stored by their turning angle.
 *
 * A curve on [0,1] is gamma(s) = speed * integral_0^s (cos theta, sin theta) du.
 * Positions come from a composite-trapezoid prefix table on a uniform grid
 * (error O(N^-2)); values between nodes are linearly interpolated so that
 * every derived quantity stays continuous in the parameter.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"

namespace curveclose {

class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t default_resolution = 4096;
inline constexpr std::size_t min_theta_samples = 65;

/// theta values at s_i = i / (n - 1), i = 0..n-1; must be a continuous lift.
struct SampledTheta {
    std::vector<double> values;
};

struct FourierTerm {
    double amp = 0.0;
    double freq = 0.0;
    double phase = 0.0;
};

/// theta(s) = 2*pi*winding*s + sum amp*sin(2*pi*freq*s + phase) - offset
struct FourierTheta {
    int winding = 0;
    std::vector<FourierTerm> terms;
    double offset = 0.0;
};

using ThetaSpec = std::variant<SampledTheta, FourierTheta>;

namespace detail {

inline bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

// Periodic part of a Fourier spec. Integer frequencies are reduced modulo one period so
// that s = 0 and s = 1 give bit-identical values.
inline double fourier_periodic(const FourierTheta& f, double s) {
    double acc = 0.0;
    for (const auto& term : f.terms) {
        double cycles = term.freq * s;
        if (is_integer(term.freq)) cycles -= std::nearbyint(cycles);
        acc += term.amp * std::sin(two_pi * cycles + term.phase);
    }
    return acc - f.offset;
}

inline double fourier_theta(const FourierTheta& f, double s) {
    return two_pi * (static_cast<double>(f.winding) * s) + fourier_periodic(f, s);
}

inline double sampled_theta(const SampledTheta& t, double s) {
    const auto& v = t.values;
    const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(v.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(x), v.size() - 2);
    const double w = x - static_cast<double>(i);
    return v[i] + w * (v[i + 1] - v[i]);
}

}  // namespace detail

class TurningCurve {
public:
    TurningCurve(double speed, ThetaSpec theta, bool normalized = false)
        : speed_(speed), theta_(std::move(theta)), normalized_(normalized) {
        validate();
    }

    static TurningCurve fourier(double speed, int winding, std::vector<FourierTerm> terms = {}) {
        return {speed, FourierTheta{winding, std::move(terms), 0.0}};
    }

    static TurningCurve sampled(double speed, std::vector<double> values) {
        return {speed, SampledTheta{std::move(values)}};
    }

    /// Samples theta on n + 1 uniform nodes.
    template <class F>
    static TurningCurve tabulate(double speed, F&& theta, std::size_t n = default_resolution) {
        std::vector<double> values(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            values[i] = theta(static_cast<double>(i) / static_cast<double>(n));
        }
        return sampled(speed, std::move(values));
    }

    double speed() const { return speed_; }
    const ThetaSpec& theta_spec() const { return theta_; }
    bool normalized() const { return normalized_; }

    double theta(double s) const {
        return std::visit(
            [s](const auto& spec) -> double {
                using T = std::decay_t<decltype(spec)>;
                if constexpr (std::is_same_v<T, FourierTheta>) {
                    return detail::fourier_theta(spec, s);
                } else {
                    return detail::sampled_theta(spec, s);
                }
            },
            theta_);
    }

    bool operator==(const TurningCurve& o) const {
        if (speed_ != o.speed_ || normalized_ != o.normalized_ ||
            theta_.index() != o.theta_.index()) {
            return false;
        }
        if (const auto* a = std::get_if<SampledTheta>(&theta_)) {
            return a->values == std::get<SampledTheta>(o.theta_).values;
        }
        const auto& a = std::get<FourierTheta>(theta_);
        const auto& b = std::get<FourierTheta>(o.theta_);
        if (a.winding != b.winding || a.offset != b.offset || a.terms.size() != b.terms.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            const auto& x = a.terms[i];
            const auto& y = b.terms[i];
            if (x.amp != y.amp || x.freq != y.freq || x.phase != y.phase) return false;
        }
        return true;
    }

private:
    void validate() const {
        if (!(speed_ > 0.0) || !std::isfinite(speed_)) {
            throw CurveError("speed must be a positive finite number");
        }
        if (const auto* s = std::get_if<SampledTheta>(&theta_)) {
            if (s->values.size() < min_theta_samples) {
                throw CurveError("theta samples: need at least " +
                                 std::to_string(min_theta_samples) + " values");
            }
            for (std::size_t i = 0; i < s->values.size(); ++i) {
                if (!std::isfinite(s->values[i])) {
                    throw CurveError("theta samples: value " + std::to_string(i) +
                                     " is not finite");
                }
                if (i > 0 && std::fabs(s->values[i] - s->values[i - 1]) >= std::numbers::pi) {
                    throw CurveError("theta samples: jump of at least pi between values " +
                                     std::to_string(i - 1) + " and " + std::to_string(i) +
                                     " (samples must be a continuous lift)");
                }
            }
        } else {
            const auto& f = std::get<FourierTheta>(theta_);
            for (const auto& t : f.terms) {
                if (!std::isfinite(t.amp) || !std::isfinite(t.freq) || !std::isfinite(t.phase)) {
                    throw CurveError("fourier term has a non-finite field");
                }
            }
        }
    }

    double speed_;
    ThetaSpec theta_;
    bool normalized_;
};

/// Shifts theta so that theta(0) == 0. Positions already start at the origin.
inline TurningCurve normalize(const TurningCurve& curve) {
    if (curve.normalized()) return curve;
    ThetaSpec spec = curve.theta_spec();
    if (auto* s = std::get_if<SampledTheta>(&spec)) {
        const double base = s->values.front();
        for (double& v : s->values) v -= base;
    } else {
        auto& f = std::get<FourierTheta>(spec);
        f.offset = 0.0;
        f.offset = detail::fourier_periodic(f, 0.0);
    }
    return {curve.speed(), std::move(spec), true};
}

/// theta(1) - theta(0); exactly 2*pi*m for Fourier specs with integer frequencies.
inline double total_turning(const TurningCurve& curve) {
    if (const auto* f = std::get_if<FourierTheta>(&curve.theta_spec())) {
        double acc = two_pi * static_cast<double>(f->winding);
        for (const auto& t : f->terms) {
            if (detail::is_integer(t.freq)) continue;
            acc += t.amp * (std::sin(two_pi * t.freq + t.phase) - std::sin(t.phase));
        }
        return acc;
    }
    const auto& v = std::get<SampledTheta>(curve.theta_spec()).values;
    return v.back() - v.front();
}

inline std::optional<int> turning_multiple(const TurningCurve& curve, double tol = 1e-9) {
    const double turns = total_turning(curve) / two_pi;
    const double m = std::nearbyint(turns);
    if (std::fabs(total_turning(curve) - two_pi * m) <= tol) return static_cast<int>(m);
    return std::nullopt;
}

/// A curve together with its trapezoid prefix table; immutable and shareable.
class TracedCurve {
public:
    explicit TracedCurve(TurningCurve curve, std::size_t resolution = default_resolution)
        : curve_(std::move(curve)), n_(resolution) {
        if (n_ < 1) throw CurveError("resolution must be positive");
        theta_.resize(n_ + 1);
        prefix_.resize(n_ + 1);
        const double step = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i <= n_; ++i) theta_[i] = curve_.theta(node(i));
        const double half = 0.5 * curve_.speed() * step;
        for (std::size_t i = 0; i < n_; ++i) {
            prefix_[i + 1] = prefix_[i] + (unit(theta_[i]) + unit(theta_[i + 1])) * half;
        }
    }

    const TurningCurve& curve() const { return curve_; }
    std::size_t resolution() const { return n_; }
    double speed() const { return curve_.speed(); }
    double node(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_); }
    const std::vector<Vec2>& nodes() const { return prefix_; }
    const std::vector<double>& node_angles() const { return theta_; }

    double theta(double s) const { return curve_.theta(s); }

    Vec2 position(double s) const {
        check_parameter(s);
        const double x = s * static_cast<double>(n_);
        const auto i = std::min(static_cast<std::size_t>(x), n_ - 1);
        const double w = x - static_cast<double>(i);
        return prefix_[i] * (1.0 - w) + prefix_[i + 1] * w;
    }

    Vec2 endpoint() const { return prefix_[n_]; }

    /// gamma(b) - gamma(a) from the panels between a and b only.
    Vec2 chord(double a, double b) const {
        check_parameter(a);
        check_parameter(b);
        if (b < a) return -chord(b, a);
        const double xa = a * static_cast<double>(n_);
        const double xb = b * static_cast<double>(n_);
        const auto ia = std::min(static_cast<std::size_t>(xa), n_ - 1);
        const auto ib = std::min(static_cast<std::size_t>(xb), n_ - 1);
        auto panel = [this](std::size_t i) { return prefix_[i + 1] - prefix_[i]; };
        if (ia == ib) return panel(ia) * (xb - xa);
        Vec2 acc = panel(ia) * (static_cast<double>(ia + 1) - xa);
        for (std::size_t i = ia + 1; i < ib; ++i) acc += panel(i);
        acc += panel(ib) * (xb - static_cast<double>(ib));
        return acc;
    }

    double max_radius() const {
        double r = 0.0;
        for (const auto& p : prefix_) r = std::max(r, norm(p));
        return r;
    }

private:
    static void check_parameter(double s) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw CurveError("curve parameter " + std::to_string(s) + " outside [0,1]");
        }
    }

    TurningCurve curve_;
    std::size_t n_;
    std::vector<double> theta_;
    std::vector<Vec2> prefix_;
};

inline Vec2 position(const TurningCurve& curve, double s,
                     std::size_t resolution = default_resolution) {
    return TracedCurve(curve, resolution).position(s);
}

inline double max_radius(const TurningCurve& curve, std::size_t resolution = default_resolution) {
    return TracedCurve(curve, resolution).max_radius();
}

}  // namespace curveclose
