#include <gtest/gtest.h>

#include <cmath>

#include "rothe/error.hpp"
#include "rothe/scheme.hpp"
#include "rothe/setup.hpp"
#include "rothe/study.hpp"

using namespace rothe;

namespace {

RunSetup manufactured_setup(int N, int M) {
    RunSetup s;
    s.problem = ProblemChoice::Manufactured;
    s.mesh_M = M;
    s.grid.N = N;
    return s;
}

RunSetup nonsmooth_setup(int N) {
    RunSetup s;
    s.problem = ProblemChoice::P1;
    s.alpha = 3.0;
    s.g_law = "arctan";
    s.j_law = "jump";
    s.mesh_M = 40;
    s.grid.N = N;
    s.u0 = {ProfileSpec::Kind::Ramp, 0.5, 1};
    s.v0 = {ProfileSpec::Kind::HalfSine, 1.0, 1};
    s.load.push_back({{TimeProfileSpec::Kind::Sin, 20.0, 3.0}, {ProfileSpec::Kind::Constant, 1.0, 1}});
    return s;
}

}  // namespace

TEST(AverageRhs, ConstantLoadIsReproduced) {
    const FemSpace s = FemSpace::uniform(10, Dirichlet::Both, 2.0);
    const Load load({LoadTerm{[](double) { return 2.0; }, [](double x) { return x; }}});
    const TimeGrid g = TimeGrid::from_steps({0.1, 0.3, 0.2, 0.4});
    const auto f = average_rhs(load, g, s);
    ASSERT_EQ(static_cast<int>(f.size()), g.N());
    EXPECT_EQ(f[0].norm(), 0.0);
    const DualVector ref = 2.0 * s.load_vector([](double x) { return x; });
    for (int n = 1; n < g.N(); ++n) EXPECT_LT((f[n] - ref).norm(), 1e-14);
}

TEST(AverageRhs, QuadraticTimeProfileOnVariableSteps) {
    // mean of t^2 over [a, b] is (a^2 + ab + b^2) / 3
    const FemSpace s = FemSpace::uniform(6, Dirichlet::Both, 2.0);
    const Load load({LoadTerm{[](double t) { return t * t; }, [](double) { return 1.0; }}});
    const TimeGrid g = TimeGrid::from_steps({0.1, 0.3, 0.2, 0.4, 0.15});
    const auto f = average_rhs(load, g, s);
    const DualVector one = s.load_vector([](double) { return 1.0; });
    for (int n = 1; n < g.N(); ++n) {
        const double a = g.t(n) - 0.5 * g.tau(n), b = g.t(n) + 0.5 * g.tau(n + 1);
        const double mean = (a * a + a * b + b * b) / 3.0;
        EXPECT_LT((f[n] - mean * one).norm(), 1e-14) << n;
    }
    // a linear profile averages to its value at t_n on uniform grids
    const Load lin({LoadTerm{[](double t) { return t; }, [](double) { return 1.0; }}});
    const TimeGrid u = TimeGrid::uniform(4, 1.0);
    const auto fl = average_rhs(lin, u, s);
    EXPECT_LT((fl[1] - 0.25 * one).norm(), 1e-15);
    EXPECT_LT((fl[2] - 0.5 * one).norm(), 1e-15);
}

TEST(TimeAverage, Polynomials) {
    EXPECT_NEAR(time_average([](double t) { return t * t * t; }, 0.0, 2.0), 2.0, 1e-14);
    EXPECT_NEAR(time_average([](double t) { return std::cos(t); }, 0.0, 0.1), std::sin(0.1) / 0.1, 1e-14);
}

TEST(RunScheme, ZeroDataStaysZero) {
    RunSetup s;
    s.problem = ProblemChoice::P2;
    s.g_law = "arctan";
    s.j_law = "abs";
    s.mesh_M = 20;
    s.grid.N = 8;
    const BuiltRun run = build_run(s);
    const Trajectory traj = run_scheme(run.input);
    ASSERT_TRUE(traj.complete());
    for (const auto& u : traj.u) EXPECT_EQ(u.norm(), 0.0);
    for (const auto& v : traj.v) EXPECT_EQ(v.norm(), 0.0);
    for (const auto& e : traj.eta) EXPECT_EQ(e.norm(), 0.0);
}

TEST(RunScheme, RecoveryIdentityHoldsExactly) {
    const BuiltRun run = build_run(nonsmooth_setup(24));
    const Trajectory traj = run_scheme(run.input);
    ASSERT_TRUE(traj.complete());
    ASSERT_EQ(static_cast<int>(traj.v.size()), traj.N());
    ASSERT_EQ(static_cast<int>(traj.eta.size()), traj.N());
    for (int n = 0; n < traj.N(); ++n) {
        const FemFunction next = traj.u[n] + traj.grid.tau(n + 1) * traj.v[n];
        EXPECT_EQ((traj.u[n + 1] - next).cwiseAbs().maxCoeff(), 0.0) << n;
    }
}

TEST(RunScheme, EveryStepIsCertified) {
    const BuiltRun run = build_run(nonsmooth_setup(32));
    int seen = 0;
    const Trajectory traj = run_scheme(run.input, [&](const StepRecord&) { ++seen; });
    EXPECT_EQ(seen, traj.N() - 1);
    for (const StepRecord& r : traj.steps) {
        EXPECT_TRUE(r.certified) << r.n;
        EXPECT_LE(r.certified_residual, 1e-8);
        EXPECT_LE(r.graph_distance, (1 + 2.0) * 1e-6);
    }
    EXPECT_EQ(traj.eta_padded(0), traj.eta[1]);
}

TEST(RunScheme, InadmissibleGridIsRefusedBeforeAnyStep) {
    RunSetup s = nonsmooth_setup(4);
    s.alpha = 1.6;
    s.mesh_M = 50;
    const BuiltRun run = build_run(s);
    ASSERT_FALSE(run.constraint.admissible);
    int seen = 0;
    EXPECT_THROW(run_scheme(run.input, [&](const StepRecord&) { ++seen; }), InadmissibleStep);
    EXPECT_EQ(seen, 0);
}

TEST(RunScheme, DeterministicAcrossRuns) {
    const BuiltRun run = build_run(nonsmooth_setup(16));
    const Trajectory a = run_scheme(run.input), b = run_scheme(run.input);
    for (int n = 0; n <= a.N(); ++n) EXPECT_EQ(a.u[n], b.u[n]);
    for (int n = 0; n < a.N(); ++n) EXPECT_EQ(a.eta[n], b.eta[n]);
}

TEST(RunScheme, ManufacturedErrorDecreasesUnderRefinement) {
    const Trajectory coarse = run_scheme(build_run(manufactured_setup(32, 200)).input);
    const Trajectory fine = run_scheme(build_run(manufactured_setup(64, 200)).input);
    const double ec = manufactured_errors(coarse).velocity_L2H, ef = manufactured_errors(fine).velocity_L2H;
    EXPECT_LT(ef, ec);
    EXPECT_NEAR(ec / ef, 2.0, 0.3);
}
