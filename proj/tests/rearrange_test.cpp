#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

namespace cc = curveclose;
namespace ts = testing_support;
using std::numbers::pi;

namespace {

cc::TracedCurve traced_circle() {
    return cc::TracedCurve(cc::normalize(cc::TurningCurve::fourier(ts::tau, 1)));
}

}  // namespace

TEST(Cuts, Validation) {
    EXPECT_THROW(cc::Cuts({0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(cc::Cuts({-0.1}), std::invalid_argument);
    EXPECT_THROW(cc::Cuts({1.1}), std::invalid_argument);
    const cc::Cuts c{0.2, 0.2, 0.9};
    EXPECT_EQ(c.k(), 4u);
    EXPECT_EQ(c.at(0), 0.0);
    EXPECT_EQ(c.at(4), 1.0);
    EXPECT_EQ(c.min_arc_length(), 0.0);
}

TEST(Split, TwoArcs) {
    const cc::TracedCurve t(ts::swirl());
    const auto arcs = cc::split(t, cc::Cuts{0.5});
    ASSERT_EQ(arcs.size(), 2u);
    EXPECT_EQ(arcs[0].begin, 0.0);
    EXPECT_EQ(arcs[0].end, 0.5);
    EXPECT_EQ(arcs[1].begin, 0.5);
    EXPECT_EQ(arcs[1].end, 1.0);
}

TEST(Split, DegenerateArcKeepsTangent) {
    const cc::TracedCurve t(ts::swirl());
    const auto arcs = cc::split(t, cc::Cuts{0.3, 0.3});
    EXPECT_TRUE(arcs[1].degenerate());
    EXPECT_EQ(arcs[1].entry_angle, t.theta(0.3));
    EXPECT_EQ(arcs[1].exit_angle, t.theta(0.3));
    EXPECT_EQ(arcs[1].chord, cc::Vec2{});

    const auto c = traced_circle();
    const auto first = cc::split(c, cc::Cuts{0.0, 0.4});
    EXPECT_TRUE(first[0].degenerate());
    EXPECT_EQ(first[0].entry_angle, 0.0);
}

TEST(Concat, InOrderReproducesCurve) {
    const cc::TracedCurve t(ts::swirl());
    for (double c1 : {0.0, 0.21, 0.5, 0.93, 1.0}) {
        const auto arcs = cc::split(t, cc::Cuts{c1});
        const auto joined = cc::concat(cc::Composite::from_arc(arcs[0]), cc::Composite::from_arc(arcs[1]));
        EXPECT_LT(cc::distance(joined.endpoint(), t.endpoint()), 1e-12);
    }
}

TEST(Concat, RightAngleHandComputation) {
    // first piece: straight, exits at angle 0; second: straight, enters at pi/2
    const cc::TracedCurve flat(cc::TurningCurve::sampled(1.0, std::vector<double>(65, 0.0)));
    const cc::TracedCurve up(cc::TurningCurve::sampled(1.0, std::vector<double>(65, pi / 2)));
    const auto a = cc::Composite::from_arc(cc::split(flat, cc::Cuts{0.5})[0]);
    const auto b = cc::Composite::from_arc(cc::split(up, cc::Cuts{0.5})[1]);
    const auto ab = cc::concat(a, b);
    EXPECT_NEAR(ab.pieces()[1].motion.angle, -pi / 2, 1e-15);
    EXPECT_NEAR(ab.endpoint().x, 1.0, 1e-15);
    EXPECT_NEAR(ab.endpoint().y, 0.0, 1e-15);
}

TEST(Concat, SpeedMismatch) {
    const cc::TracedCurve a(ts::swirl());
    const cc::TracedCurve b(cc::normalize(cc::TurningCurve::fourier(2.0, 1)));
    EXPECT_THROW(cc::concat(cc::Composite::from_curve(a), cc::Composite::from_curve(b)),
                 cc::RearrangeError);
}

TEST(Concat, Associative) {
    std::mt19937_64 rng(21);
    const auto curve = cc::random_fourier_curve(2, rng);
    const cc::TracedCurve t(curve);
    for (int i = 0; i < 50; ++i) {
        const auto cuts = ts::random_cuts(3, rng);
        const auto arcs = cc::split(t, cc::Cuts(cuts));
        const auto p = ts::random_perm(3, rng);
        const auto a = cc::Composite::from_arc(arcs[p(1) - 1]);
        const auto b = cc::Composite::from_arc(arcs[p(2) - 1]);
        const auto c = cc::Composite::from_arc(arcs[p(3) - 1]);
        const auto left = cc::concat(cc::concat(a, b), c);
        const auto right = cc::concat(a, cc::concat(b, c));
        EXPECT_LT(cc::distance(left.endpoint(), right.endpoint()), 1e-12);
        EXPECT_NEAR(left.exit_angle(), right.exit_angle(), 1e-12);
    }
}

TEST(Rearranged, IdentityIsInput) {
    const cc::TracedCurve t(ts::swirl());
    std::mt19937_64 rng(2);
    for (std::size_t k : {2u, 3u, 6u}) {
        const cc::Cuts cuts(ts::random_cuts(k, rng));
        const auto r = cc::rearranged(t, cc::Perm::identity(k), cuts);
        EXPECT_LT(cc::distance(r.endpoint(), t.endpoint()), 1e-12);
        for (double s : {0.1, 0.45, 0.77}) EXPECT_LT(cc::distance(r.position(s), t.position(s)), 1e-12);
    }
}

TEST(Rearranged, EqualCutsGiveGammaOne) {
    const cc::TracedCurve t(ts::swirl());
    for (double c1 : {0.0, 0.3, 0.8, 1.0}) {
        const auto r = cc::rearranged(t, cc::Perm{1, 3, 2}, cc::Cuts{c1, c1});
        EXPECT_LT(cc::distance(r.endpoint(), t.endpoint()), 1e-12);
    }
}

TEST(Rearranged, BoundaryCutsStayOnCircle) {
    std::mt19937_64 rng(8);
    const cc::TracedCurve t(cc::random_fourier_curve(-2, rng));
    const double r = cc::norm(t.endpoint());
    for (int i = 0; i <= 40; ++i) {
        const auto re = cc::rearranged(t, cc::Perm{1, 3, 2}, cc::Cuts{0.0, i / 40.0});
        EXPECT_NEAR(cc::norm(re.endpoint()), r, 1e-6);
    }
}

TEST(Rearranged, TotalTurningPreservedExactly) {
    std::mt19937_64 rng(4);
    for (int m : {1, -1, 2, -2}) {
        const cc::TracedCurve t(cc::random_fourier_curve(m, rng));
        for (int i = 0; i < 30; ++i) {
            const std::size_t k = 2 + i % 6;
            const auto r = cc::rearranged(t, ts::random_perm(k, rng), cc::Cuts(ts::random_cuts(k, rng)));
            EXPECT_EQ(r.total_turning(), cc::total_turning(t.curve()));
            EXPECT_EQ(cc::tangent_mismatch(r), 0.0);
        }
    }
    const cc::TracedCurve open(cc::looped_tail_curve(0.3));
    const auto r = cc::rearranged(open, cc::Perm{1, 3, 2}, cc::Cuts{0.2, 0.7});
    EXPECT_EQ(r.total_turning(), cc::total_turning(open.curve()));
}

TEST(Rearranged, IsNormalized) {
    const cc::TracedCurve t(ts::swirl());
    const auto r = cc::rearranged(t, cc::Perm{3, 1, 2}, cc::Cuts{0.3, 0.6});
    EXPECT_LT(cc::norm(r.start()), 1e-15);
    EXPECT_NEAR(r.entry_angle(), 0.0, 1e-15);
}

TEST(Rearranged, DimensionMismatch) {
    const cc::TracedCurve t(ts::swirl());
    EXPECT_THROW(cc::rearranged(t, cc::Perm{1, 2}, cc::Cuts{0.2, 0.4}), cc::RearrangeError);
    EXPECT_THROW(cc::endpoint_map(t, cc::Perm{1, 2}, cc::Cuts{0.2, 0.4}), cc::RearrangeError);
}

TEST(EndpointMap, AgreesWithComposite) {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int m : {1, 2, -1, 3}) {
        const cc::TracedCurve t(cc::random_fourier_curve(m, rng));
        for (int i = 0; i < 250; ++i, ++checked) {
            const std::size_t k = 2 + static_cast<std::size_t>(i % 7);
            const auto sigma = ts::random_perm(k, rng);
            const cc::Cuts cuts(ts::random_cuts(k, rng));
            const auto e = cc::endpoint_map(t, sigma, cuts);
            EXPECT_LT(cc::distance(e, cc::rearranged(t, sigma, cuts).endpoint()), 1e-9 * t.speed());
        }
    }
    EXPECT_EQ(checked, 1000);
}

TEST(EndpointMap, MatchesDefinitionOracle) {
    std::mt19937_64 rng(31);
    const auto curve = cc::random_fourier_curve(1, rng);
    const cc::TracedCurve t(curve);
    const auto f = ts::formula_of(curve);
    for (int i = 0; i < 20; ++i) {
        const std::size_t k = 3 + static_cast<std::size_t>(i % 4);
        const auto sigma = ts::random_perm(k, rng);
        const auto cuts = ts::random_cuts(k, rng);
        const auto o = ts::rearranged_endpoint(f, 1.0, sigma, cuts, 200'000);
        EXPECT_LT(ts::distance(o, cc::endpoint_map(t, sigma, cc::Cuts(cuts))), 1e-6);
    }
}

TEST(EndpointMap, IdentityGivesGammaOne) {
    const cc::TracedCurve t(ts::swirl());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const cc::Cuts cuts(ts::random_cuts(5, rng));
        EXPECT_LT(cc::distance(cc::endpoint_map(t, cc::Perm::identity(5), cuts), t.endpoint()), 1e-12);
    }
}

TEST(EndpointMap, ClosedFormOnBoundary) {
    std::mt19937_64 rng(12);
    for (int m : {1, -2}) {
        const cc::TracedCurve t(cc::random_fourier_curve(m, rng));
        for (int i = 0; i <= 64; ++i) {
            const double s = i / 64.0;
            EXPECT_LT(cc::distance(cc::endpoint_map(t, cc::Perm{1, 3, 2}, cc::Cuts{0.0, s}),
                                   cc::e3_closed_form(t, s)),
                      1e-9 * t.speed());
        }
    }
}

TEST(EndpointMap, CyclicShiftsKeepNorm) {
    std::mt19937_64 rng(13);
    const cc::TracedCurve t(cc::random_fourier_curve(2, rng));
    const double r = cc::norm(t.endpoint());
    for (std::size_t k : {3u, 4u, 5u}) {
        for (std::size_t h = 0; h < k; ++h) {
            for (int i = 0; i < 50; ++i) {
                const cc::Cuts cuts(ts::random_cuts(k, rng));
                EXPECT_NEAR(cc::norm(cc::endpoint_map(t, cc::cyclic_shift(k, h), cuts)), r, 1e-6);
            }
        }
    }
}

TEST(EndpointMap, LoopClosesForEveryH) {
    std::mt19937_64 rng(17);
    const cc::TracedCurve t(cc::random_fourier_curve(1, rng));
    for (double h : {0.0, 0.2, 0.55, 0.9}) {
        const auto a = cc::endpoint_map(t, cc::Perm{1, 3, 2}, cc::Cuts{h, h});
        const auto b = cc::endpoint_map(t, cc::Perm{1, 3, 2}, cc::Cuts{h, 1.0});
        EXPECT_LT(cc::distance(a, b), 1e-12);
        EXPECT_LT(cc::distance(a, t.endpoint()), 1e-12);
    }
}

TEST(EndpointMap, ContinuousInCuts) {
    std::mt19937_64 rng(19);
    const auto curve = cc::random_fourier_curve(2, rng);
    const cc::TracedCurve t(curve);
    // measured Lipschitz bound of theta
    double lip = 0.0;
    for (int i = 0; i < 10000; ++i) lip = std::max(lip, std::fabs(t.theta((i + 1) / 10000.0) - t.theta(i / 10000.0)) * 10000.0);
    std::uniform_real_distribution<double> u(-1e-4, 1e-4);
    for (int i = 0; i < 200; ++i) {
        const std::size_t k = 3 + static_cast<std::size_t>(i % 4);
        const auto sigma = ts::random_perm(k, rng);
        auto c = ts::random_cuts(k, rng);
        auto d = c;
        for (double& v : d) v = std::clamp(v + u(rng), 0.0, 1.0);
        std::sort(d.begin(), d.end());
        const double jump = cc::distance(cc::endpoint_map(t, sigma, cc::Cuts(c)), cc::endpoint_map(t, sigma, cc::Cuts(d)));
        EXPECT_LE(jump, k * t.speed() * (1 + ts::tau * lip) * 1e-4);
    }
}

TEST(ClosedForm, Examples) {
    const cc::TracedCurve t(ts::swirl());
    EXPECT_EQ(cc::e3_closed_form(t, 0.0), t.endpoint());
    EXPECT_LT(cc::distance(cc::e3_closed_form(t, 1.0), t.endpoint()), 1e-15);
    for (double s : {0.1, 0.6}) EXPECT_NEAR(cc::norm(cc::e3_closed_form(t, s)), cc::norm(t.endpoint()), 1e-15);
    const cc::TracedCurve open(cc::looped_tail_curve(0.3));
    EXPECT_THROW(cc::e3_closed_form(open, 0.5), cc::RearrangeError);
}

TEST(TangentMismatch, Examples) {
    EXPECT_EQ(cc::tangent_mismatch(cc::normalize(cc::TurningCurve::fourier(1.0, 1))), 0.0);
    EXPECT_NEAR(cc::tangent_mismatch(cc::looped_tail_curve(0.3)), 0.3, 1e-12);
    EXPECT_NEAR(cc::tangent_mismatch(cc::looped_tail_curve(-0.3)), 0.3, 1e-12);
}
