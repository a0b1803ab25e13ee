#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rothe/error.hpp"
#include "rothe/laws.hpp"

using namespace rothe;

namespace {

std::vector<PotentialGraph> all_potentials() {
    return {PotentialGraph::zero(), PotentialGraph::quadratic(), PotentialGraph::abs(), PotentialGraph::jump(),
            PotentialGraph::double_well(), PotentialGraph::jump().scaled(2.5)};
}

}  // namespace

TEST(PotentialGraph, QuadraticIsSingleValued) {
    const PotentialGraph j = PotentialGraph::quadratic();
    for (double s : {-3.0, -0.2, 0.0, 0.7, 5.0}) {
        const auto [lo, hi] = j.subdiff_interval(s);
        EXPECT_DOUBLE_EQ(lo, s);
        EXPECT_DOUBLE_EQ(hi, s);
        EXPECT_NEAR(j.regularized(s, 0.3), s, 1e-15);
        EXPECT_NEAR(j.potential(s), 0.5 * s * s, 1e-15);
    }
    EXPECT_TRUE(j.smooth());
}

TEST(PotentialGraph, JumpDensityHandValues) {
    const PotentialGraph j = PotentialGraph::jump();
    const auto [lo, hi] = j.subdiff_interval(1.0);
    EXPECT_DOUBLE_EQ(lo, 0.5);
    EXPECT_DOUBLE_EQ(hi, 1.0);
    const auto [a, b] = j.subdiff_interval(0.5);
    EXPECT_DOUBLE_EQ(a, 0.5);
    EXPECT_DOUBLE_EQ(b, 0.5);
    // (1/0.2) [int_0.9^1 r dr + int_1^1.1 r/2 dr] = (0.095 + 0.0525) / 0.2
    EXPECT_NEAR(j.regularized(1.0, 0.1), 0.7375, 1e-14);
    const double r = j.regularized(1.0, 0.1);
    EXPECT_GE(r, lo);
    EXPECT_LE(r, hi);
    EXPECT_EQ(j.max_jump(), 0.5);
}

TEST(PotentialGraph, AbsAndDoubleWell) {
    const PotentialGraph a = PotentialGraph::abs();
    EXPECT_EQ(a.subdiff_interval(0.0), std::make_pair(-1.0, 1.0));
    EXPECT_EQ(a.regularized(0.0, 1e-3), 0.0);
    EXPECT_NEAR(a.regularized(0.0005, 1e-3), 0.5, 1e-12);
    const PotentialGraph d = PotentialGraph::double_well();
    EXPECT_EQ(d.subdiff_interval(0.0), std::make_pair(-1.0, 1.0));
    EXPECT_NEAR(d.density(2.0), 1.0, 1e-15);
    EXPECT_NEAR(d.density(-0.5), 0.5, 1e-15);
    // j(s) = s^2 / 2 - |s|
    EXPECT_NEAR(d.potential(1.0), -0.5, 1e-15);
    EXPECT_NEAR(d.potential(-2.0), 0.0, 1e-15);
    EXPECT_EQ(d.potential(0.0), 0.0);
}

TEST(PotentialGraph, EndpointsAreOneSidedDifferenceQuotients) {
    const double h = 1e-6;
    for (const PotentialGraph& j : all_potentials()) {
        std::vector<double> pts{-2.3, -1.0, -0.4, 0.0, 0.3, 1.0, 1.7};
        for (double b : j.breakpoints()) pts.push_back(b);
        for (double s : pts) {
            const auto [lo, hi] = j.subdiff_interval(s);
            const double left = (j.potential(s) - j.potential(s - h)) / h;
            const double right = (j.potential(s + h) - j.potential(s)) / h;
            EXPECT_NEAR(std::min(left, right), lo, 1e-4) << j.name() << " s=" << s;
            EXPECT_NEAR(std::max(left, right), hi, 1e-4) << j.name() << " s=" << s;
            EXPECT_TRUE(std::isfinite(lo) && std::isfinite(hi));
        }
    }
}

TEST(PotentialGraph, PotentialIntegratesDensity) {
    for (const PotentialGraph& j : all_potentials()) {
        for (auto [a, b] : {std::pair{-2.0, 0.5}, std::pair{0.2, 3.0}, std::pair{-1.5, 1.5}}) {
            // Simpson panel by panel between breakpoints, where the density is smooth
            std::vector<double> cuts{a};
            for (double c : j.breakpoints())
                if (c > a && c < b) cuts.push_back(c);
            cuts.push_back(b);
            double ref = 0;
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                // one-sided values at the panel ends
                const double lo = std::nextafter(cuts[k], INFINITY), hi = std::nextafter(cuts[k + 1], -INFINITY);
                ref += oracle::simpson([&](double s) { return j.density(std::clamp(s, lo, hi)); }, cuts[k], cuts[k + 1], 200);
            }
            EXPECT_NEAR(j.potential(b) - j.potential(a), ref, 1e-6) << j.name();
        }
    }
}

TEST(PotentialGraph, RegularizationConvergesAtSmoothPoints) {
    // Densities are piecewise linear, so the average is exact once the window
    // stays clear of every breakpoint; before that the error is O(1).
    for (const PotentialGraph& j : all_potentials()) {
        for (double s : {-0.9, 0.05, 0.93, 1.2}) {
            double dist = INFINITY;
            for (double b : j.breakpoints()) dist = std::min(dist, std::abs(b - s));
            for (double eps = 0.4; eps > 1e-7; eps *= 0.5) {
                const double err = std::abs(j.regularized(s, eps) - j.density(s));
                if (eps < dist) EXPECT_LE(err, 1e-15 / eps + 1e-14) << j.name() << " s=" << s << " eps=" << eps;
                else EXPECT_LE(err, j.growth_constant() * (1 + std::abs(s) + eps)) << j.name();
            }
        }
    }
}

TEST(PotentialGraph, RegularizedDerivativeIsCentralDifferenceOfDensityAverage) {
    const PotentialGraph j = PotentialGraph::jump();
    for (double s : {0.2, 0.95, 1.0, 1.04, 2.0}) {
        const double eps = 0.05, h = 1e-6;
        const double fd = (j.regularized(s + h, eps) - j.regularized(s - h, eps)) / (2 * h);
        EXPECT_NEAR(j.regularized_derivative(s, eps), fd, 1e-5) << s;
    }
}

TEST(PotentialGraph, GraphDistance) {
    const PotentialGraph a = PotentialGraph::abs();
    EXPECT_NEAR(a.graph_distance(0.0, 0.3), 0.0, 1e-15);
    EXPECT_NEAR(a.graph_distance(0.0, 2.0), 1.0, 1e-15);
    EXPECT_NEAR(a.graph_distance(2.0, 1.0), 0.0, 1e-15);
    const PotentialGraph j = PotentialGraph::jump();
    EXPECT_NEAR(j.graph_distance(1.0, 0.75), 0.0, 1e-15);
    // nearest graph point of (2, 0) is (1.6, 0.8) on the branch eta = s/2
    EXPECT_NEAR(j.graph_distance(2.0, 0.0), std::sqrt(0.8), 1e-14);
    for (double s : {-1.0, 0.3, 1.0, 2.0}) {
        const auto [lo, hi] = j.subdiff_interval(s);
        EXPECT_NEAR(j.graph_distance(s, 0.5 * (lo + hi)), 0.0, 1e-15);
    }
}

TEST(PotentialGraph, GrowthBoundAndScaling) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-50, 50);
    for (const PotentialGraph& j : all_potentials()) {
        for (int k = 0; k < 500; ++k) {
            const double s = U(rng);
            const auto [lo, hi] = j.subdiff_interval(s);
            const double bound = j.growth_constant() * (1 + std::abs(s));
            EXPECT_LE(std::max(std::abs(lo), std::abs(hi)), bound + 1e-12) << j.name() << " s=" << s;
        }
    }
    const PotentialGraph j = PotentialGraph::jump(), k = j.scaled(3.0);
    EXPECT_DOUBLE_EQ(k.growth_constant(), 3.0 * j.growth_constant());
    for (double s : {-1.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(k.density(s), 3.0 * j.density(s), 1e-15);
    EXPECT_THROW(PotentialGraph("bad", {1.0, 0.0}, {{0, 0}, {0, 0}, {0, 0}}, 1.0), ConfigError);
}

TEST(ScalarLaw, HandValuesAndBounds) {
    const ScalarLaw g = ScalarLaw::arctan();
    EXPECT_NEAR(g(2.0) * 2.0, 2.2142974355881813, 1e-15);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-100, 100);
    for (const ScalarLaw& law : {ScalarLaw::zero(), ScalarLaw::arctan(), ScalarLaw::identity(),
                                 ScalarLaw::power(0.5, 3.0), ScalarLaw::power(2.0, 4.0)}) {
        for (int k = 0; k < 200; ++k) {
            const double s = U(rng);
            EXPECT_GE(law(s) * s, law.lower_bound_gs() - 1e-12);
            const double h = 1e-6 * std::max(1.0, std::abs(s));
            const double fd = (law(s + h) - law(s - h)) / (2 * h);
            EXPECT_NEAR(law.derivative(s), fd, 1e-6 * std::max(1.0, std::abs(fd))) << law.name() << " s=" << s;
        }
    }
    EXPECT_THROW(ScalarLaw::power(1.0, 1.5), ConfigError);
    EXPECT_NEAR(ScalarLaw::power(2.0, 3.0)(-3.0), -18.0, 1e-13);
}
