#include "rothe/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseLU>

#include "rothe/error.hpp"
#include "rothe/io.hpp"

namespace rothe {

namespace {

void validate(const OperatorSuite& suite, const StepProblem& problem, const SolverConfig& config) {
    const int n = suite.space().dim();
    if (problem.u.size() != n || problem.v_prev.size() != n || problem.f.size() != n) {
        throw ConfigError("step problem vectors do not match the space dimension");
    }
    if (!(problem.tau_half > 0.0)) throw ConfigError("tau_half must be positive");
    if (!(config.tol > 0.0) || !(config.eps_target > 0.0) || !(config.eps0 > 0.0)) {
        throw ConfigError("solver tolerances must be positive");
    }
    if (config.max_newton < 1 || config.stall_window < 1 || config.damping.empty()) {
        throw ConfigError("solver budget, stall window and damping schedule must be nonempty");
    }
}

std::vector<double> smoothing_levels(const PotentialGraph& j, const SolverConfig& c) {
    std::vector<double> levels;
    if (!j.smooth()) {
        for (double e = c.eps0; e > c.eps_target * (1.0 + 1e-12); e *= 0.5) levels.push_back(e);
    }
    levels.push_back(c.eps_target);
    return levels;
}

// Smoothed residual map F_eps(v) and its Jacobian.
class SmoothedMap {
public:
    SmoothedMap(const OperatorSuite& suite, const StepProblem& problem)
        : suite_(suite), problem_(problem), inv_tau_(1.0 / problem.tau_half) {
        fixed_ = suite.apply_B(problem.t, problem.u).total() - problem.f -
                 inv_tau_ * (suite.space().mass() * problem.v_prev);
    }

    void set_eps(double eps) { eps_ = eps; }

    Eigen::VectorXd selection(const FemFunction& v) const {
        Eigen::VectorXd s = suite_.gamma(v);
        for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = suite_.params().j.regularized(s[k], eps_);
        return s;
    }

    DualVector operator()(const FemFunction& v) const {
        return inv_tau_ * (suite_.space().mass() * v) + suite_.apply_A(problem_.t, v) + fixed_ +
               suite_.gamma_adjoint(selection(v));
    }

    // monotone part: mass / tau_half + tangent of A
    SparseMatrix smooth_jacobian(const FemFunction& v, double floor) const {
        SparseMatrix J = suite_.tangent_A(problem_.t, v, floor);
        J += inv_tau_ * suite_.space().mass();
        return J;
    }

    SparseMatrix jacobian(const FemFunction& v, double floor) const {
        SparseMatrix J = smooth_jacobian(v, floor);
        const Eigen::VectorXd s = suite_.gamma(v);
        const auto& idx = suite_.site_indices();
        const auto& w = suite_.site_weights();
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            const double d = suite_.params().j.regularized_derivative(s[k], eps_);
            if (d != 0.0) J.coeffRef(idx[k], idx[k]) += w[k] * d;
        }
        return J;
    }

private:
    const OperatorSuite& suite_;
    const StepProblem& problem_;
    double inv_tau_;
    double eps_ = 1.0;
    DualVector fixed_;
};

}  // namespace

DualVector step_residual(const OperatorSuite& suite, const StepProblem& problem, const FemFunction& v,
                         const Eigen::VectorXd& eta) {
    const DualVector inertia = suite.space().mass() * (v - problem.v_prev) / problem.tau_half;
    return inertia + suite.apply_A(problem.t, v) + suite.apply_B(problem.t, problem.u).total() +
           suite.gamma_adjoint(eta) - problem.f;
}

StepSolution solve_step(const OperatorSuite& suite, const StepProblem& problem, const SolverConfig& config) {
    validate(suite, problem, config);
    if (problem.constraint && !problem.constraint->admissible) {
        throw InadmissibleStep("inadmissible step: " + problem.constraint->describe());
    }

    const FemSpace& space = suite.space();
    SmoothedMap F(suite, problem);
    const std::vector<double> levels = smoothing_levels(suite.params().j, config);

    FemFunction v = problem.v_prev;
    std::vector<double> history;
    int total_iterations = 0;
    FemFunction best_v = v;
    double best_r = std::numeric_limits<double>::infinity();

    Eigen::SparseLU<SparseMatrix> lu;
    for (std::size_t level = 0; level < levels.size(); ++level) {
        const bool final_level = level + 1 == levels.size();
        // the final level leaves headroom for the independent re-assembly
        const double tol = final_level ? 0.5 * config.tol : std::max(config.tol, 1e-6);
        F.set_eps(levels[level]);

        DualVector R = F(v);
        double r = space.dual_norm_surrogate(R);
        history.push_back(r);
        double level_best = r;
        best_v = v;
        best_r = r;
        int since_best = 0;

        for (int it = 0; it < config.max_newton && r > tol; ++it) {
            ++total_iterations;
            bool accepted = false;
            const SparseMatrix J = F.jacobian(v, config.tangent_floor);
            lu.compute(J);
            if (lu.info() == Eigen::Success) {
                const Eigen::VectorXd d = lu.solve(-R);
                if (lu.info() == Eigen::Success && d.allFinite()) {
                    double lambda = 1.0;
                    for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
                        const FemFunction trial = v + lambda * d;
                        const DualVector Rt = F(trial);
                        const double rt = space.dual_norm_surrogate(Rt);
                        if (rt <= (1.0 - 1e-4 * lambda) * r) {
                            v = trial;
                            R = Rt;
                            r = rt;
                            accepted = true;
                            break;
                        }
                    }
                }
            }
            history.push_back(r);
            if (r < level_best * (1.0 - 1e-3)) {
                level_best = r;
                since_best = 0;
            } else {
                ++since_best;
            }
            if (r < best_r) {
                best_r = r;
                best_v = v;
            }

            if (r > tol && (!accepted || since_best >= config.stall_window)) {
                // fixed-point escape along the Riesz direction, scaled by the
                // monotone part of the Jacobian; taken without a decrease test
                for (int k = 0; k < config.stall_window && it < config.max_newton; ++k, ++it) {
                    ++total_iterations;
                    const FemFunction z = space.solve_stiffness(R);
                    const SparseMatrix Js = F.smooth_jacobian(v, config.tangent_floor);
                    const double kz = z.dot(space.stiffness() * z);
                    const double theta = kz > 0.0 ? std::max(z.dot(Js * z) / kz, 1e-300) : 1.0;
                    const double omega = config.damping[static_cast<std::size_t>(k) % config.damping.size()];
                    v -= (omega / theta) * z;
                    R = F(v);
                    r = space.dual_norm_surrogate(R);
                    history.push_back(r);
                    if (r < best_r) {
                        best_r = r;
                        best_v = v;
                    }
                    if (r <= tol) break;
                }
                level_best = r;
                since_best = 0;
            }
        }
        if (r > tol) {
            if (final_level) {
                throw NonConvergence("step " + std::to_string(problem.n) + ": no convergence at eps=" +
                                         io::format_double(levels[level]) + ", best residual " +
                                         io::format_double(best_r),
                                     best_v, history);
            }
            v = best_v;  // continue the continuation from the best iterate
        }
    }

    StepSolution sol;
    F.set_eps(config.eps_target);
    sol.eta = F.selection(v);
    sol.v = std::move(v);
    sol.iterations = total_iterations;
    sol.levels = static_cast<int>(levels.size());
    sol.eps = config.eps_target;
    sol.residual = space.dual_norm_surrogate(step_residual(suite, problem, sol.v, sol.eta));
    const Eigen::VectorXd s = suite.gamma(sol.v);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        sol.graph_distance = std::max(sol.graph_distance, suite.params().j.graph_distance(s[k], sol.eta[k]));
    }
    return sol;
}

StepCertificate certify_step(const OperatorSuite& suite, const StepProblem& problem, const FemFunction& v,
                             const Eigen::VectorXd& eta, const SolverConfig& config) {
    StepCertificate c;
    c.residual = suite.space().dual_norm_surrogate(step_residual(suite, problem, v, eta));
    c.residual_ok = c.residual <= config.tol;
    const PotentialGraph& j = suite.params().j;
    c.graph_bound = (1.0 + j.max_slope()) * config.eps_target;
    const Eigen::VectorXd s = suite.gamma(v);
    for (Eigen::Index k = 0; k < s.size(); ++k) c.graph_distance = std::max(c.graph_distance, j.graph_distance(s[k], eta[k]));
    c.graph_ok = c.graph_distance <= c.graph_bound;
    return c;
}

}  // namespace rothe
