#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rothe/operators.hpp"
#include "rothe/scheme.hpp"
#include "rothe/stepper.hpp"
#include "rothe/time_grid.hpp"

namespace rothe {

// Spatial profile x -> value used for initial data and load terms.
struct ProfileSpec {
    enum class Kind { Zero, Constant, Sine, HalfSine, Ramp, Hat };
    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    int mode = 1;

    double operator()(double x) const;
    double derivative(double x) const;
};

// Time profile t -> value of a separable load term.
struct TimeProfileSpec {
    enum class Kind { Constant, Linear, Sin, Cos };
    Kind kind = Kind::Constant;
    double amplitude = 1.0;
    double omega = 1.0;

    double operator()(double t) const;
};

struct LoadTermSpec {
    TimeProfileSpec time;
    ProfileSpec space;
};

enum class ProblemChoice { P1, P2, Manufactured };

// Declarative description of one run; the CLI fills it from the config file.
struct RunSetup {
    ProblemChoice problem = ProblemChoice::P2;
    double p = 2.0;
    double delta = 0.0;
    double alpha = 1.0;
    std::string g_law = "zero";      // zero | arctan | identity | power
    double g_c = 1.0;                // coefficient of the power law
    std::string j_law = "quadratic"; // zero | quadratic | abs | jump | double-well
    double j_scale = 1.0;
    int mesh_M = 100;
    std::optional<Dirichlet> dirichlet;  // default follows the problem
    GridSpec grid;
    SolverConfig solver;
    ProfileSpec u0;
    ProfileSpec v0;
    std::vector<LoadTermSpec> load;
    int audit_samples = 64;
    std::uint64_t audit_seed = 1;
};

ScalarLaw make_scalar_law(const std::string& name, double c, double p);
PotentialGraph make_potential(const std::string& name, double scale);

// Everything needed to execute a run. `input.constraint` is always filled.
struct BuiltRun {
    std::shared_ptr<const OperatorSuite> suite;
    ConstantsLedger ledger;
    StepConstraintReport constraint;
    RunInput input;
};

// Builds space, suite, ledger, grid, initial data and load. The manufactured
// problem fixes p = 2, delta = 0, g = identity, j = quadratic, its own initial
// data and load. Throws ConfigError on invalid input and HypothesisViolated
// when mu_A <= c_M |gamma|^p.
BuiltRun build_run(const RunSetup& setup);

// Builds only the suite and its ledger (no grid check).
std::pair<std::shared_ptr<const OperatorSuite>, ConstantsLedger> build_suite(const RunSetup& setup);

}  // namespace rothe
