#pragma once

/**
 * @file families.hpp
 * @brief Reproducible test curves.
 */

#include <cmath>
#include <random>
#include <vector>

#include "curve.hpp"

namespace curveclose {

struct FourierFamily {
    int max_terms = 3;
    int max_freq = 3;
    double min_amp = 0.3;
    double max_amp = 1.2;
    double speed = 1.0;
    double min_gap = 0.05;  ///< reject curves with |gamma(1)| < min_gap * speed
};

/// Normalized curve with total turning 2*pi*m plus a few integer-frequency sine terms,
/// redrawn until it is clearly not closed.
inline TurningCurve random_fourier_curve(int winding, std::mt19937_64& rng,
                                         const FourierFamily& family = {}) {
    std::uniform_int_distribution<int> count(1, family.max_terms);
    std::uniform_int_distribution<int> freq(1, family.max_freq);
    std::uniform_real_distribution<double> amp(family.min_amp, family.max_amp);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    for (;;) {
        std::vector<FourierTerm> terms(static_cast<std::size_t>(count(rng)));
        for (auto& t : terms) {
            t.amp = amp(rng);
            t.freq = freq(rng);
            t.phase = phase(rng);
        }
        auto curve = normalize(TurningCurve::fourier(family.speed, winding, std::move(terms)));
        if (norm(TracedCurve(curve).endpoint()) >= family.min_gap * family.speed) return curve;
    }
}

/// One full loop plus `extra` radians packed into [0, loop_fraction], then a straight
/// tail. The long tail makes |gamma(1)| close to max |gamma|, which is what the C0
/// closing condition needs when the total turning is not a whole number of turns.
inline TurningCurve looped_tail_curve(double extra = 0.3, double loop_fraction = 0.15,
                                      double speed = 1.0,
                                      std::size_t samples = default_resolution) {
    const double total = two_pi + extra;
    return normalize(TurningCurve::tabulate(
        speed,
        [=](double s) {
            const double x = std::min(1.0, s / loop_fraction);
            return total * x * x * (3.0 - 2.0 * x);
        },
        samples));
}

}  // namespace curveclose
