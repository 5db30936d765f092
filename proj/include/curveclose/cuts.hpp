#pragma once

/**
 * @file cuts.hpp
 * @brief Cut vectors in D_k with implicit end points 0 and 1.
 */

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace curveclose {

/// Split parameters 0 <= c_1 <= ... <= c_{k-1} <= 1 of a k-arc decomposition.
class Cuts {
public:
    Cuts() = default;

    explicit Cuts(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double c = values_[i];
            if (!(c >= 0.0 && c <= 1.0)) {
                throw std::invalid_argument("cut c_" + std::to_string(i + 1) + " = " +
                                            std::to_string(c) + " outside [0,1]");
            }
            if (i > 0 && c < values_[i - 1]) {
                throw std::invalid_argument("cuts must be nondecreasing (c_" + std::to_string(i) +
                                            " > c_" + std::to_string(i + 1) + ")");
            }
        }
    }

    Cuts(std::initializer_list<double> values) : Cuts(std::vector<double>(values)) {}

    /// Number of arcs.
    std::size_t k() const { return values_.size() + 1; }

    /// c_0 = 0 and c_k = 1 are implicit.
    double at(std::size_t i) const {
        if (i == 0) return 0.0;
        if (i == k()) return 1.0;
        return values_.at(i - 1);
    }

    const std::vector<double>& values() const { return values_; }

    double arc_length(std::size_t arc) const { return at(arc) - at(arc - 1); }

    double min_arc_length() const {
        double m = 1.0;
        for (std::size_t a = 1; a <= k(); ++a) m = std::min(m, arc_length(a));
        return m;
    }

    bool operator==(const Cuts&) const = default;

private:
    std::vector<double> values_;
};

}  // namespace curveclose
