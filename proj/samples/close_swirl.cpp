// Closes the swirl curve with two cuts and prints the rearranged CSV row.
#include <iostream>

#include "curveclose/curveclose.hpp"

int main() {
    namespace cc = curveclose;
    const auto curve = cc::normalize(cc::TurningCurve::fourier(1.0, 1, {{0.9, 1.0, 0.0}}));
    const cc::TracedCurve traced(curve);
    const auto r = cc::solve_two_cut(traced);
    std::cout << cc::csv_header(3) << '\n' << cc::csv_row(r) << '\n';
    return r.ok() ? 0 : 1;
}
