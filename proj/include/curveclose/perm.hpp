#pragma once

/**
 * @file perm.hpp
 * @brief Arc permutations: cyclic shifts, index contraction and cut inflation.
 *
 * Permutations are stored in one-line notation with 1-based values: position j of the
 * rearranged curve holds original arc sigma(j). Composition is right-to-left,
 * compose(a, b)(x) == a(b(x)).
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cuts.hpp"

namespace curveclose {

class PermError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> one_line) : p_(std::move(one_line)) {
        std::vector<bool> seen(p_.size() + 1, false);
        for (int v : p_) {
            if (v < 1 || v > static_cast<int>(p_.size()) || seen[v]) {
                throw PermError("not a permutation of 1.." + std::to_string(p_.size()) + ": " +
                                to_string());
            }
            seen[v] = true;
        }
    }

    Perm(std::initializer_list<int> one_line) : Perm(std::vector<int>(one_line)) {}

    static Perm identity(std::size_t k) {
        std::vector<int> p(k);
        std::iota(p.begin(), p.end(), 1);
        return Perm(std::move(p));
    }

    /// Whitespace-separated one-line notation, e.g. "2 5 1 6 4 3".
    static Perm parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::vector<int> p;
        std::string token;
        while (in >> token) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) throw PermError("bad permutation entry '" + token + "'");
            p.push_back(v);
        }
        if (p.empty()) throw PermError("empty permutation");
        return Perm(std::move(p));
    }

    std::size_t size() const { return p_.size(); }

    /// sigma(j), 1-based.
    int operator()(std::size_t j) const { return p_.at(j - 1); }

    const std::vector<int>& one_line() const { return p_; }

    Perm inverse() const {
        std::vector<int> inv(p_.size());
        for (std::size_t j = 0; j < p_.size(); ++j) inv[p_[j] - 1] = static_cast<int>(j + 1);
        return Perm(std::move(inv));
    }

    std::string to_string(char sep = ' ') const {
        std::string out;
        for (std::size_t j = 0; j < p_.size(); ++j) {
            if (j) out += sep;
            out += std::to_string(p_[j]);
        }
        return out;
    }

    bool operator==(const Perm&) const = default;

private:
    std::vector<int> p_;
};

inline bool is_cyclic_shift(const Perm& sigma) {
    const auto k = static_cast<int>(sigma.size());
    for (std::size_t j = 1; j < sigma.size(); ++j) {
        if (((sigma(j + 1) - sigma(j)) % k + k) % k != 1 % k) return false;
    }
    return true;
}

/// z_h = [h+1, ..., k, 1, ..., h]
inline Perm cyclic_shift(std::size_t k, std::size_t h) {
    if (k == 0 || h >= k) {
        throw PermError("cyclic shift index " + std::to_string(h) + " out of range for k = " +
                        std::to_string(k));
    }
    std::vector<int> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<int>((i + h) % k + 1);
    return Perm(std::move(p));
}

/// compose(a, b)(x) = a(b(x))
inline Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw PermError("compose: size mismatch");
    std::vector<int> p(a.size());
    for (std::size_t x = 1; x <= a.size(); ++x) p[x - 1] = a(static_cast<std::size_t>(b(x)));
    return Perm(std::move(p));
}

/// The relabeling F_i: drop the arc at rearranged position i and renumber the rest.
inline Perm contract(const Perm& sigma, std::size_t i) {
    const std::size_t k = sigma.size();
    if (k < 2 || i < 1 || i > k) {
        throw PermError("contract: position " + std::to_string(i) + " out of range for k = " +
                        std::to_string(k));
    }
    const int removed = sigma(i);
    std::vector<int> p;
    p.reserve(k - 1);
    for (std::size_t j = 1; j <= k - 1; ++j) {
        const int v = j < i ? sigma(j) : sigma(j + 1);
        p.push_back(v < removed ? v : v - 1);
    }
    return Perm(std::move(p));
}

/// Index i with contract(sigma, i) non-cyclic and fixing 1, for non-cyclic sigma with
/// sigma(1) == 1 and k >= 4.
inline std::size_t choose_reduction_index(const Perm& sigma) {
    const std::size_t k = sigma.size();
    if (k < 4 || sigma(1) != 1 || is_cyclic_shift(sigma)) {
        throw PermError("choose_reduction_index needs a non-cyclic permutation with k >= 4 "
                        "fixing 1, got " + sigma.to_string());
    }
    std::size_t r = 1;
    while (sigma(r) == static_cast<int>(r)) ++r;
    if (r > 2) return 1;
    if (sigma(2) != static_cast<int>(k)) {
        return static_cast<std::size_t>(sigma.inverse()(k));
    }
    return 3;
}

struct ReductionStep {
    std::size_t position = 0;   ///< i of F_i, in the permutation before this step
    int collapsed_arc = 0;      ///< original arc id that degenerates
    Perm result;
};

/// How a k-arc permutation reduces to the two-cut swap [1,3,2].
struct ReductionPlan {
    Perm original;
    std::size_t shift = 0;   ///< working = compose(original, z_shift)
    Perm working;
    std::vector<ReductionStep> steps;  ///< in application order
    std::array<int, 3> survivors{};    ///< original arc ids, increasing
    std::array<std::size_t, 3> q{};    ///< survivors - 1
    Perm induced;

    std::size_t k() const { return original.size(); }

    /// Composition notation, rightmost applied first, e.g. "F_2 . F_3 . F_5".
    std::string chain_string() const {
        std::string out;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            if (!out.empty()) out += " . ";
            out += "F_" + std::to_string(it->position);
        }
        return out;
    }

    std::vector<std::size_t> chain_positions() const {
        std::vector<std::size_t> out;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(it->position);
        return out;
    }
};

/// Picks the smallest shift h whose working permutation w = sigma . z_h satisfies
/// w(1) < w(k) < k, keeps arcs w(1), w(k) and k (they appear in the order low, high, mid)
/// and collapses every other arc, rightmost position first.
inline ReductionPlan build_reduction_plan(const Perm& sigma) {
    const std::size_t k = sigma.size();
    if (k < 3) throw PermError("reduction needs k >= 3");
    if (is_cyclic_shift(sigma)) {
        throw PermError("permutation " + sigma.to_string() +
                        " is a cyclic shift; no cuts close the curve");
    }
    const int top = static_cast<int>(k);
    ReductionPlan plan;
    plan.original = sigma;
    for (std::size_t h = 0; h < k; ++h) {
        const Perm w = compose(sigma, cyclic_shift(k, h));
        if (w(1) < w(k) && w(k) != top) {
            plan.shift = h;
            plan.working = w;
            break;
        }
    }
    if (plan.working.size() == 0) {
        throw PermError("no reduction found for " + sigma.to_string());  // unreachable
    }

    const Perm& w = plan.working;
    std::vector<int> keep{w(1), w(k), top};
    std::vector<int> original_of(k);  // current arc id - 1 -> original arc id
    std::iota(original_of.begin(), original_of.end(), 1);
    Perm current = w;
    for (std::size_t pos = k - 1; pos >= 2; --pos) {
        if (w(pos) == top) continue;
        const int id = current(pos);
        ReductionStep step;
        step.position = pos;
        step.collapsed_arc = original_of[id - 1];
        original_of.erase(original_of.begin() + (id - 1));
        current = contract(current, pos);
        if (is_cyclic_shift(current)) {
            throw PermError("reduction step produced a cyclic shift");  // unreachable
        }
        step.result = current;
        plan.steps.push_back(std::move(step));
    }
    std::sort(keep.begin(), keep.end());
    for (std::size_t i = 0; i < 3; ++i) {
        plan.survivors[i] = keep[i];
        plan.q[i] = static_cast<std::size_t>(keep[i] - 1);
    }
    plan.induced = current;
    if (plan.induced != Perm{1, 3, 2}) {
        throw PermError("reduction ended in " + plan.induced.to_string());  // unreachable
    }
    return plan;
}

/// min{l1, l2 - l1, 1 - l2} / (k - 2)
inline double inflation_width(std::size_t k, double l1, double l2) {
    return std::min({l1, l2 - l1, 1.0 - l2}) / static_cast<double>(k - 2);
}

/// Inflated cuts I[l1, l2]: collapsed arcs get width delta, survivors share the rest.
/// On the boundary of the two-cut triangle delta is zero and nothing is inflated.
inline Cuts inflate(const ReductionPlan& plan, double l1, double l2) {
    if (!(l1 >= 0.0 && l1 <= l2 && l2 <= 1.0)) {
        throw PermError("inflate: (" + std::to_string(l1) + ", " + std::to_string(l2) +
                        ") outside 0 <= l1 <= l2 <= 1");
    }
    const std::size_t k = plan.k();
    const double delta = inflation_width(k, l1, l2);
    const auto [q1, q2, q3] = plan.q;
    std::vector<double> c(k - 1);
    for (std::size_t j = 1; j <= k - 1; ++j) {
        double v;
        if (j <= q1) {
            v = static_cast<double>(j) * delta;
        } else if (j <= q2) {
            v = l1 + static_cast<double>(j - (q1 + 1)) * delta;
        } else if (j <= q3) {
            v = l2 + static_cast<double>(j - (q2 + 1)) * delta;
        } else {
            v = 1.0 - static_cast<double>(k - j) * delta;
        }
        c[j - 1] = v;
    }
    return Cuts(std::move(c));
}

}  // namespace curveclose
