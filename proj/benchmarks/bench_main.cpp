#include <benchmark/benchmark.h>

#include <cmath>

#include "rothe/scheme.hpp"
#include "rothe/setup.hpp"

using namespace rothe;

namespace {

RunSetup p1_jump(int M, int N) {
    RunSetup s;
    s.problem = ProblemChoice::P1;
    s.alpha = 3.0;
    s.g_law = "arctan";
    s.j_law = "jump";
    s.mesh_M = M;
    s.grid.N = N;
    s.load.push_back({{TimeProfileSpec::Kind::Sin, 20.0, 3.0}, {ProfileSpec::Kind::Constant, 1.0, 1}});
    return s;
}

void BM_StepSolve(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    SuiteParams prm;
    prm.problem = ProblemKind::P2;
    prm.p = 3.0;
    prm.delta = 0.2;
    prm.g = ScalarLaw::arctan();
    prm.j = PotentialGraph::double_well();
    auto space = std::make_shared<const FemSpace>(FemSpace::uniform(M, Dirichlet::Both, 3.0));
    const OperatorSuite suite(space, prm);
    StepProblem pb;
    pb.tau_half = 0.02;
    pb.u = space->interpolate([](double x) { return std::sin(3.14159 * x); });
    pb.v_prev = FemFunction::Zero(space->dim());
    pb.f = space->load_vector([](double x) { return 10 * std::cos(5 * x); });
    for (auto _ : state) benchmark::DoNotOptimize(solve_step(suite, pb));
}
BENCHMARK(BM_StepSolve)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_FullRunNonsmooth(benchmark::State& state) {
    const BuiltRun run = build_run(p1_jump(100, static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(run_scheme(run.input));
}
BENCHMARK(BM_FullRunNonsmooth)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DualNormExact(benchmark::State& state) {
    const FemSpace s = FemSpace::uniform(static_cast<int>(state.range(0)), Dirichlet::Both, 3.0);
    const DualVector r = s.load_vector([](double x) { return std::sin(7 * x) + x; });
    for (auto _ : state) benchmark::DoNotOptimize(s.dual_norm_W(r));
}
BENCHMARK(BM_DualNormExact)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_DualNormSurrogate(benchmark::State& state) {
    const FemSpace s = FemSpace::uniform(static_cast<int>(state.range(0)), Dirichlet::Both, 3.0);
    const DualVector r = s.load_vector([](double x) { return std::sin(7 * x) + x; });
    for (auto _ : state) benchmark::DoNotOptimize(s.dual_norm_surrogate(r));
}
BENCHMARK(BM_DualNormSurrogate)->Arg(50)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
