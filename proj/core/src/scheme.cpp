#include "rothe/scheme.hpp"

#include "rothe/io.hpp"
#include "rothe/quadrature.hpp"

namespace rothe {

DualVector Load::at(const FemSpace& space, double t) const {
    DualVector out = DualVector::Zero(space.dim());
    for (const LoadTerm& term : terms_) {
        const double a = term.time(t);
        if (a != 0.0) out += a * space.load_vector(term.space);
    }
    return out;
}

double time_average(const std::function<double(double)>& a, double lo, double hi) {
    using R = quad::Rule5;
    double sum = 0.0;
    for (int g = 0; g < R::size; ++g) sum += R::weights[g] * a(lo + R::points[g] * (hi - lo));
    return sum;
}

std::vector<DualVector> average_rhs(const Load& load, const TimeGrid& grid, const FemSpace& space) {
    const int N = grid.N();
    std::vector<DualVector> out(N, DualVector::Zero(space.dim()));
    std::vector<DualVector> spatial;
    spatial.reserve(load.terms().size());
    for (const LoadTerm& term : load.terms()) spatial.push_back(space.load_vector(term.space));

    for (int n = 1; n <= N - 1; ++n) {
        const double a = grid.t_half(n - 1);
        const double m = grid.t(n);
        const double b = grid.t_half(n);
        const double la = m - a;
        const double lb = b - m;
        for (std::size_t k = 0; k < spatial.size(); ++k) {
            const auto& time = load.terms()[k].time;
            const double mean = (la * time_average(time, a, m) + lb * time_average(time, m, b)) / (la + lb);
            out[n] += mean * spatial[k];
        }
    }
    return out;
}

Trajectory run_scheme(const RunInput& in, const StepObserver& observer) {
    if (!in.suite) throw ConfigError("run needs an operator suite");
    const OperatorSuite& suite = *in.suite;
    const int dim = suite.space().dim();
    if (in.u0.size() != dim || in.v0.size() != dim) throw ConfigError("initial data do not match the space");
    if (in.constraint && !in.constraint->admissible) {
        throw InadmissibleStep("inadmissible grid: " + in.constraint->describe());
    }

    const TimeGrid& grid = in.grid;
    const int N = grid.N();
    auto traj = std::make_shared<Trajectory>(Trajectory{in.suite, grid, {}, {}, {}, {}, {}});
    traj->f = average_rhs(in.load, grid, suite.space());
    traj->u.reserve(N + 1);
    traj->v.reserve(N);
    traj->eta.reserve(N);
    traj->u.push_back(in.u0);
    traj->v.push_back(in.v0);
    traj->eta.push_back(Eigen::VectorXd::Zero(suite.num_sites()));  // replaced by eta^1
    // u^1 = u^0 + tau_1 v^0
    traj->u.push_back(traj->u[0] + grid.tau(1) * traj->v[0]);

    for (int n = 1; n <= N - 1; ++n) {
        StepProblem problem;
        problem.n = n;
        problem.tau_half = grid.tau_half(n);
        problem.t = grid.t(n);
        problem.u = traj->u[n];
        problem.v_prev = traj->v[n - 1];
        problem.f = traj->f[n];

        StepSolution sol;
        try {
            sol = solve_step(suite, problem, in.solver);
        } catch (const NonConvergence& e) {
            throw SolverFailure(e.what(), traj);
        }
        const StepCertificate cert = certify_step(suite, problem, sol.v, sol.eta, in.solver);

        StepRecord rec;
        rec.n = n;
        rec.t = grid.t(n);
        rec.iterations = sol.iterations;
        rec.levels = sol.levels;
        rec.residual = sol.residual;
        rec.eps = sol.eps;
        rec.graph_distance = cert.graph_distance;
        rec.certified_residual = cert.residual;
        rec.certified = cert.ok();
        traj->steps.push_back(rec);
        if (observer) observer(rec);
        if (!cert.ok()) {
            throw SolverFailure("step " + std::to_string(n) + " failed its certificate: residual " +
                                    io::format_double(cert.residual) + ", graph distance " +
                                    io::format_double(cert.graph_distance) + " (bound " +
                                    io::format_double(cert.graph_bound) + ")",
                                traj);
        }

        traj->u.push_back(traj->u[n] + grid.tau(n + 1) * sol.v);
        traj->v.push_back(std::move(sol.v));
        traj->eta.push_back(std::move(sol.eta));
        if (n == 1) traj->eta[0] = traj->eta[1];
    }
    return std::move(*traj);
}

}  // namespace rothe
