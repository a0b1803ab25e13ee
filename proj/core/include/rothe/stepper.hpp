#pragma once

#include <optional>
#include <vector>

#include "rothe/operators.hpp"
#include "rothe/time_grid.hpp"

namespace rothe {

struct SolverConfig {
    double tol = 1e-8;          // on the dual surrogate of the residual
    double eps0 = 1e-2;         // first smoothing width
    double eps_target = 1e-6;   // final smoothing width
    int max_newton = 100;       // iterations per smoothing level
    int stall_window = 8;       // Newton iterations without progress before the fixed-point escape
    std::vector<double> damping{1.0, 0.5, 0.25};
    double tangent_floor = 1e-12;
};

// One instance of
//   (1/tau_half)(v - v_prev) + A(t, v) + B(t, u) + gamma^* eta = f,  eta in M(gamma v).
struct StepProblem {
    int n = 1;
    double tau_half = 1.0;
    double t = 0.0;
    FemFunction u;
    FemFunction v_prev;
    DualVector f;
    // when present and not admissible the step is refused
    std::optional<StepConstraintReport> constraint;
};

struct StepSolution {
    FemFunction v;
    Eigen::VectorXd eta;        // selection at the sites of the suite
    int iterations = 0;         // Newton plus fixed-point iterations over all levels
    int levels = 0;
    double residual = 0.0;      // dual surrogate at the returned (v, eta)
    double eps = 0.0;           // final smoothing width
    double graph_distance = 0.0;  // max over sites
};

// Continuation in the smoothing width with damped Newton per level and a
// fixed-point escape on stall. Throws InadmissibleStep, NonConvergence.
StepSolution solve_step(const OperatorSuite& suite, const StepProblem& problem, const SolverConfig& config = {});

// Left side minus f at (v, eta), assembled directly from the suite.
DualVector step_residual(const OperatorSuite& suite, const StepProblem& problem, const FemFunction& v,
                         const Eigen::VectorXd& eta);

struct StepCertificate {
    double residual = 0.0;
    double graph_distance = 0.0;
    double graph_bound = 0.0;   // (1 + max slope of the density) * eps_target
    bool residual_ok = false;
    bool graph_ok = false;

    bool ok() const { return residual_ok && graph_ok; }
};

// Independent re-check of a step: reassembles the residual and measures each
// selection against the exact subdifferential graph.
StepCertificate certify_step(const OperatorSuite& suite, const StepProblem& problem, const FemFunction& v,
                             const Eigen::VectorXd& eta, const SolverConfig& config);

}  // namespace rothe
