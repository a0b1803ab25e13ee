#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rothe/interpolants.hpp"
#include "rothe/study.hpp"

using namespace rothe;

namespace {

constexpr double pi = std::numbers::pi;

RunSetup manufactured(int M) {
    RunSetup s;
    s.problem = ProblemChoice::Manufactured;
    s.mesh_M = M;
    return s;
}

RunSetup p1_jump() {
    RunSetup s;
    s.problem = ProblemChoice::P1;
    s.alpha = 3.0;
    s.g_law = "arctan";
    s.j_law = "jump";
    s.mesh_M = 40;
    s.load.push_back({{TimeProfileSpec::Kind::Sin, 20.0, 3.0}, {ProfileSpec::Kind::Constant, 1.0, 1}});
    return s;
}

// |v_tau - u'|^2 in L^2(0,T;H) by brute force: Simpson in time on every
// interval of v_tau and Simpson in space on every mesh element.
double brute_velocity_error(const Trajectory& traj) {
    const FemSpace& s = traj.suite->space();
    const InterpolantSet I = make_interpolants(traj);
    const auto& b = I.v.breakpoints();
    double total = 0;
    for (int k = 0; k + 1 < static_cast<int>(b.size()); ++k) {
        const FemFunction vk = I.v.values()[k];
        const double a = b[k], c = b[k + 1];
        auto space_err = [&](double t) {
            double acc = 0;
            for (int e = 0; e < s.num_elements(); ++e) {
                const double x0 = s.x(e), x1 = s.x(e + 1);
                acc += oracle::simpson(
                    [&](double x) {
                        const double d = s.value_at(vk, x) - ManufacturedCase::u_t(t, x);
                        return d * d;
                    },
                    x0, x1, 4);
            }
            return acc;
        };
        total += oracle::simpson(space_err, a, c, 8);
    }
    return std::sqrt(total);
}

}  // namespace

TEST(Manufactured, SolutionAndLoadAreConsistent) {
    for (double alpha : {0.5, 1.0, 3.0}) {
        const ManufacturedCase mc = manufactured_case(alpha);
        for (double t : {0.0, 0.3, 0.77, 1.0})
            for (double x : {0.0, 0.13, 0.5, 0.91}) EXPECT_NEAR(mc.pointwise_residual(t, x), 0.0, 1e-10);
    }
    const ManufacturedCase mc = manufactured_case(1.0);
    for (double x : {0.1, 0.5, 0.8}) {
        EXPECT_NEAR(ManufacturedCase::u(0, x), std::sin(pi * x), 1e-15);
        EXPECT_NEAR(ManufacturedCase::u_t(0, x), 0.0, 1e-15);
        EXPECT_NEAR(mc.f(0, x), pi * pi * std::sin(pi * x), 1e-12);
        const double sum = mc.load.terms()[0].time(0.4) * mc.load.terms()[0].space(x) +
                           mc.load.terms()[1].time(0.4) * mc.load.terms()[1].space(x);
        EXPECT_NEAR(sum, mc.f(0.4, x), 1e-12);
    }
}

TEST(Manufactured, ErrorMatchesBruteForceQuadrature) {
    RunSetup s = manufactured(16);
    s.grid.N = 6;
    const Trajectory traj = run_scheme(build_run(s).input);
    // Simpson with 4 panels per element is exact only up to sin curvature;
    // the difference from the closed form stays far below the error itself.
    const double closed = manufactured_errors(traj).velocity_L2H;
    EXPECT_NEAR(closed, brute_velocity_error(traj), 1e-4 * closed);
}

TEST(Study, FittedOrderIsExactOnPowerLaws) {
    EXPECT_NEAR(fitted_order({8, 16, 32, 64}, {1.0, 0.25, 0.0625, 0.015625}), 2.0, 1e-12);
    EXPECT_NEAR(fitted_order({10, 30}, {3.0, 1.0}), 1.0, 1e-12);
}

TEST(Study, OrderStudyOnTheManufacturedProblem) {
    StudyPlan plan;
    plan.kind = StudyKind::Order;
    plan.base = manufactured(200);
    plan.levels = {32, 64, 128, 256};
    const StudyReport r = run_order_study(plan);
    ASSERT_TRUE(r.passed) << r.failure;
    ASSERT_EQ(r.rows.size(), 4u);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_LT(r.value(k, "velocity_error"), r.value(k - 1, "velocity_error"));
    const double order = fitted_order({32, 64, 128, 256}, {r.value(0, "velocity_error"), r.value(1, "velocity_error"),
                                                            r.value(2, "velocity_error"), r.value(3, "velocity_error")});
    EXPECT_GE(order, 0.8);
    EXPECT_LE(order, 2.2);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(r.value(k, "identity_rel_diff"), 1e-12);
    EXPECT_NE(r.csv().find("order"), std::string::npos);
}

TEST(Study, SpatialErrorDoesNotDominate) {
    RunSetup a = manufactured(200), b = manufactured(100);
    a.grid.N = b.grid.N = 64;
    const double ea = manufactured_errors(run_scheme(build_run(a).input)).velocity_L2H;
    const double eb = manufactured_errors(run_scheme(build_run(b).input)).velocity_L2H;
    EXPECT_LT(std::abs(ea - eb), 0.2 * ea);
}

TEST(Study, CauchyDistanceTracksTheTrueError) {
    StudyPlan plan;
    plan.kind = StudyKind::Cauchy;
    plan.base = manufactured(100);
    plan.levels = {16, 32, 64};
    const StudyReport r = run_cauchy_study(plan);
    ASSERT_TRUE(r.passed) << r.failure;
    // row k holds d = |v_k - v_{k-1}|, within a factor 2 of the error of level k-1
    EXPECT_TRUE(std::isnan(r.value(0, "d")));
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
        const double d = r.value(k, "d"), e = r.value(k - 1, "velocity_error");
        EXPECT_GT(d, 0.5 * e);
        EXPECT_LT(d, 2.0 * e);
    }
}

TEST(Study, CauchyDistanceOfIdenticalTrajectoriesVanishes) {
    RunSetup s = p1_jump();
    s.grid.N = 12;
    const Trajectory t = run_scheme(build_run(s).input);
    const InterpolantSet I = make_interpolants(t);
    EXPECT_EQ(bochner_l2_squared(I.v, I.v, t.suite->space().mass()), 0.0);
}

TEST(Study, NonsmoothCauchyStudyIsDeterministicAndParallelSafe) {
    StudyPlan plan;
    plan.kind = StudyKind::Cauchy;
    plan.base = p1_jump();
    plan.levels = {8, 16, 32};
    const StudyReport a = run_study(plan);
    const StudyReport b = run_study(plan);
    plan.parallel = true;
    const StudyReport c = run_study(plan);
    EXPECT_TRUE(a.passed) << a.failure;
    EXPECT_EQ(a.csv(), b.csv());
    EXPECT_EQ(a.csv(), c.csv());
    EXPECT_EQ(a.summary_text(), c.summary_text());
}

TEST(Study, HypothesisAuditOnUniformAndRandomFamilies) {
    StudyPlan plan;
    plan.kind = StudyKind::Hypothesis;
    plan.base.problem = ProblemChoice::P2;
    plan.base.j_law = "abs";
    plan.base.u0 = {ProfileSpec::Kind::Sine, 1.0, 1};
    plan.levels = {8, 16, 32};
    const StudyReport u = run_hypothesis_audit(plan);
    ASSERT_TRUE(u.passed) << u.failure;
    for (std::size_t k = 0; k < u.rows.size(); ++k) EXPECT_EQ(u.value(k, "sigma"), 0.0);
    // interpolation error in V is first order in h = 1/N
    const double r1 = u.value(1, "u0_error_V") / u.value(0, "u0_error_V");
    EXPECT_NEAR(r1, 0.5, 0.05);

    plan.base.grid.kind = GridSpec::Kind::SeededRandom;
    plan.base.grid.D = 2.0;
    plan.seed = 11;
    const StudyReport r = run_hypothesis_audit(plan);
    ASSERT_TRUE(r.passed) << r.failure;
    for (std::size_t k = 1; k < r.rows.size(); ++k) EXPECT_LE(r.value(k, "sigma"), r.value(k - 1, "sigma"));
    for (std::size_t k = 0; k < r.rows.size(); ++k) EXPECT_EQ(r.value(k, "tau_max_v0_V2"), 0.0);
}

TEST(Study, InadmissibleLevelsCarryNoMetrics) {
    StudyPlan plan;
    plan.kind = StudyKind::Cauchy;
    plan.base = p1_jump();
    plan.base.alpha = 1.6;
    plan.base.mesh_M = 50;
    plan.levels = {4, 64};
    const StudyReport r = run_study(plan);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.outcome, StudyOutcome::Inadmissible);
    EXPECT_EQ(r.value(0, "admissible"), 0.0);
    EXPECT_TRUE(std::isnan(r.value(0, "d")));
    EXPECT_NE(r.failure.find("inadmissible"), std::string::npos) << r.failure;
}

TEST(Study, RejectsBadLevels) {
    StudyPlan plan;
    plan.base = manufactured(20);
    plan.levels = {16, 8};
    EXPECT_THROW(run_study(plan), ConfigError);
    plan.levels = {2, 8};
    EXPECT_THROW(run_study(plan), ConfigError);
}
