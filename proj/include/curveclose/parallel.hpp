#pragma once

/**
 * @file parallel.hpp
 * @brief Deterministic fork-join loop over an index range.
 */

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace curveclose {

/// Worker count: `requested` if nonzero, else hardware concurrency, capped by the
/// CURVECLOSE_THREADS environment variable when it holds a positive integer.
inline unsigned resolve_threads(unsigned requested = 0) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CURVECLOSE_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, n);
}

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers write into
/// per-index slots so results do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace curveclose
