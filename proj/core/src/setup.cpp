#include "rothe/setup.hpp"

#include <cmath>
#include <numbers>

#include "rothe/error.hpp"

namespace rothe {

namespace {

constexpr double pi = std::numbers::pi;

ProblemKind kind_of(ProblemChoice c) {
    return c == ProblemChoice::P1 ? ProblemKind::P1 : ProblemKind::P2;
}

RunSetup normalized(const RunSetup& in) {
    RunSetup s = in;
    if (s.problem != ProblemChoice::Manufactured) return s;
    s.p = 2.0;
    s.delta = 0.0;
    s.g_law = "identity";
    s.j_law = "quadratic";
    s.j_scale = 1.0;
    s.dirichlet = Dirichlet::Both;
    s.u0 = ProfileSpec{ProfileSpec::Kind::Sine, 1.0, 1};
    s.v0 = ProfileSpec{};
    const ProfileSpec sine{ProfileSpec::Kind::Sine, 1.0, 1};
    s.load = {
        LoadTermSpec{TimeProfileSpec{TimeProfileSpec::Kind::Cos, pi * pi, 1.0}, sine},
        LoadTermSpec{TimeProfileSpec{TimeProfileSpec::Kind::Sin, -(s.alpha * pi * pi + 2.0), 1.0}, sine},
    };
    return s;
}

}  // namespace

double ProfileSpec::operator()(double x) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return amplitude;
        case Kind::Sine: return amplitude * std::sin(mode * pi * x);
        case Kind::HalfSine: return amplitude * std::sin(0.5 * pi * x);
        case Kind::Ramp: return amplitude * x;
        case Kind::Hat: return amplitude * (1.0 - std::abs(2.0 * x - 1.0));
    }
    return 0.0;
}

double ProfileSpec::derivative(double x) const {
    switch (kind) {
        case Kind::Zero:
        case Kind::Constant: return 0.0;
        case Kind::Sine: return amplitude * mode * pi * std::cos(mode * pi * x);
        case Kind::HalfSine: return amplitude * 0.5 * pi * std::cos(0.5 * pi * x);
        case Kind::Ramp: return amplitude;
        case Kind::Hat: return x < 0.5 ? 2.0 * amplitude : -2.0 * amplitude;
    }
    return 0.0;
}

double TimeProfileSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Constant: return amplitude;
        case Kind::Linear: return amplitude * t;
        case Kind::Sin: return amplitude * std::sin(omega * t);
        case Kind::Cos: return amplitude * std::cos(omega * t);
    }
    return 0.0;
}

ScalarLaw make_scalar_law(const std::string& name, double c, double p) {
    if (name == "zero") return ScalarLaw::zero();
    if (name == "arctan") return ScalarLaw::arctan();
    if (name == "identity") return ScalarLaw::identity();
    if (name == "power") return ScalarLaw::power(c, p);
    throw ConfigError("unknown g law '" + name + "' (expected zero, arctan, identity or power)");
}

PotentialGraph make_potential(const std::string& name, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("j scale must be positive");
    PotentialGraph j = PotentialGraph::zero();
    if (name == "zero") j = PotentialGraph::zero();
    else if (name == "quadratic") j = PotentialGraph::quadratic();
    else if (name == "abs") j = PotentialGraph::abs();
    else if (name == "jump") j = PotentialGraph::jump();
    else if (name == "double-well") j = PotentialGraph::double_well();
    else throw ConfigError("unknown j law '" + name + "' (expected zero, quadratic, abs, jump or double-well)");
    return scale == 1.0 ? j : j.scaled(scale);
}

static std::shared_ptr<const OperatorSuite> make_suite(const RunSetup& s) {
    if (s.mesh_M < 1) throw ConfigError("mesh M must be at least 1");
    const ProblemKind kind = kind_of(s.problem);
    const Dirichlet split = s.dirichlet.value_or(dirichlet_for(kind));
    if (!(s.p >= 2.0) || !std::isfinite(s.p)) throw ConfigError("p must be a finite number >= 2");
    auto space = std::make_shared<const FemSpace>(FemSpace::uniform(s.mesh_M, split, s.p));
    SuiteParams params;
    params.problem = kind;
    params.p = s.p;
    params.delta = s.delta;
    params.alpha = s.alpha;
    params.g = make_scalar_law(s.g_law, s.g_c, s.p);
    params.j = make_potential(s.j_law, s.j_scale);
    return std::make_shared<const OperatorSuite>(space, params);
}

std::pair<std::shared_ptr<const OperatorSuite>, ConstantsLedger> build_suite(const RunSetup& setup) {
    const RunSetup s = normalized(setup);
    auto suite = make_suite(s);
    const double D = s.grid.kind == GridSpec::Kind::SeededRandom ? s.grid.D : 1.0;
    ConstantsLedger ledger = compute_example_constants(*suite, D);
    return {suite, ledger};
}

BuiltRun build_run(const RunSetup& setup) {
    const RunSetup s = normalized(setup);
    auto suite = make_suite(s);
    TimeGrid grid = TimeGrid::build(s.grid);
    ConstantsLedger ledger = compute_example_constants(*suite, grid.tau_max() / grid.tau_min());
    StepConstraintReport constraint = check_step_constraint(grid, ledger);

    const FemSpace& space = suite->space();
    Load load;
    for (const LoadTermSpec& term : s.load) {
        const TimeProfileSpec a = term.time;
        const ProfileSpec b = term.space;
        load.add(LoadTerm{[a](double t) { return a(t); }, [b](double x) { return b(x); }});
    }
    const ProfileSpec u0 = s.u0, v0 = s.v0;
    RunInput input{suite,
                   grid,
                   space.interpolate([&](double x) { return u0(x); }),
                   space.interpolate([&](double x) { return v0(x); }),
                   std::move(load),
                   s.solver,
                   constraint};
    return BuiltRun{suite, std::move(ledger), constraint, std::move(input)};
}

}  // namespace rothe
