#include "rothe/study.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>

#include "rothe/error.hpp"
#include "rothe/interpolants.hpp"
#include "rothe/io.hpp"
#include "rothe/quadrature.hpp"

namespace rothe {

using io::CsvWriter;
using io::KeyValueReport;
using io::format_double;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double ManufacturedCase::u(double t, double x) { return std::sin(pi * x) * std::cos(t); }
double ManufacturedCase::u_t(double t, double x) { return -std::sin(pi * x) * std::sin(t); }
double ManufacturedCase::u_tt(double t, double x) { return -std::sin(pi * x) * std::cos(t); }
double ManufacturedCase::u_xx(double t, double x) { return -pi * pi * std::sin(pi * x) * std::cos(t); }
double ManufacturedCase::u_txx(double t, double x) { return pi * pi * std::sin(pi * x) * std::sin(t); }

double ManufacturedCase::f(double t, double x) const {
    double sum = 0.0;
    for (const LoadTerm& term : load.terms()) sum += term.time(t) * term.space(x);
    return sum;
}

double ManufacturedCase::pointwise_residual(double t, double x) const {
    const double v = u_t(t, x);
    return u_tt(t, x) - alpha * u_txx(t, x) + v - u_xx(t, x) + u(t, x) + v - f(t, x);
}

ManufacturedCase manufactured_case(double alpha) {
    RunSetup s;
    s.problem = ProblemChoice::Manufactured;
    s.alpha = alpha;
    s.mesh_M = 2;
    s.grid.N = 3;
    ManufacturedCase mc;
    mc.alpha = alpha;
    mc.load = build_run(s).input.load;
    return mc;
}

ManufacturedErrors manufactured_errors(const Trajectory& traj) {
    const FemSpace& space = traj.suite->space();
    const TimeGrid& grid = traj.grid;
    const int N = grid.N();
    const DualVector L = space.load_vector([](double x) { return std::sin(pi * x); });

    // v_tau takes v^k on (t_{k-1/2}, t_{k+1/2}], clipped to [0, T], with v^N := v^{N-1}
    double vel = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double a = k == 0 ? 0.0 : grid.t_half(k - 1);
        const double b = k == N ? grid.T() : grid.t_half(k);
        const FemFunction& w = traj.v_padded(k);
        const double wHw = w.dot(space.mass() * w);
        const double wL = w.dot(L);
        vel += (b - a) * wHw + 2.0 * wL * (std::cos(a) - std::cos(b)) +
               0.5 * ((b - a) / 2.0 - (std::sin(2.0 * b) - std::sin(2.0 * a)) / 4.0);
    }

    // G_i = int phi_i' (sin pi x)'
    const int nodes = space.num_nodes();
    Eigen::VectorXd G = Eigen::VectorXd::Zero(space.dim());
    for (int i = 0; i < nodes; ++i) {
        const int fi = space.free_index(i);
        if (fi < 0) continue;
        const double xi = space.x(i);
        double g = 0.0;
        if (i > 0) g += (std::sin(pi * xi) - std::sin(pi * space.x(i - 1))) / space.h(i - 1);
        if (i + 1 < nodes) g -= (std::sin(pi * space.x(i + 1)) - std::sin(pi * xi)) / space.h(i);
        G[fi] = g;
    }
    double max_u = 0.0;
    for (int n = 0; n < static_cast<int>(traj.u.size()); ++n) {
        const FemFunction& w = traj.u[n];
        const double c = std::cos(grid.t(n));
        const double e2 = w.dot(space.stiffness() * w) - 2.0 * c * w.dot(G) + c * c * pi * pi / 2.0;
        max_u = std::max(max_u, std::sqrt(std::max(0.0, e2)));
    }
    return {std::sqrt(std::max(0.0, vel)), max_u};
}

double fitted_order(const std::vector<int>& N, const std::vector<double>& err) {
    if (N.size() != err.size() || N.size() < 2) throw ConfigError("fitted_order needs matching samples");
    const double n = static_cast<double>(N.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        const double x = std::log(static_cast<double>(N[i]));
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double StudyReport::value(std::size_t row, const std::string& column) const {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end() || row >= rows.size()) return nan;
    return rows[row][static_cast<std::size_t>(it - header.begin())];
}

std::string StudyReport::csv() const {
    CsvWriter w(header);
    for (const auto& row : rows) {
        for (double x : row) {
            if (std::isnan(x)) w.empty();
            else w.cell(x);
        }
        w.end_row();
    }
    return w.str();
}

std::string StudyReport::summary_text() const {
    KeyValueReport r;
    r.add("study", kind);
    for (const auto& [k, v] : summary) r.add(k, v);
    r.add("passed", passed);
    if (!failure.empty()) r.add("failure", failure);
    return r.str();
}

namespace {

GridSpec level_grid(const StudyPlan& plan, int N) {
    GridSpec g = plan.base.grid;
    g.N = N;
    if (g.kind == GridSpec::Kind::SeededRandom) g.seed = plan.seed;
    if (g.kind == GridSpec::Kind::Steps) throw ConfigError("a study needs a grid family, not explicit steps");
    return g;
}

void validate_levels(const StudyPlan& plan, std::size_t minimum) {
    if (plan.levels.size() < minimum)
        throw ConfigError("study needs at least " + std::to_string(minimum) + " levels");
    for (std::size_t i = 0; i < plan.levels.size(); ++i) {
        if (plan.levels[i] < 3) throw ConfigError("study levels must be at least 3");
        if (i > 0 && plan.levels[i] <= plan.levels[i - 1])
            throw ConfigError("study levels must be strictly increasing");
    }
}

// Outcome of one refinement level.
struct LevelRun {
    int N = 0;
    double tau_max = 0.0;
    bool admissible = false;
    std::string reason;          // why the level produced no trajectory
    bool solver_failed = false;
    std::shared_ptr<const Trajectory> traj;
};

LevelRun run_level(const StudyPlan& plan, int N) {
    LevelRun out;
    out.N = N;
    RunSetup setup = plan.base;
    setup.grid = level_grid(plan, N);
    try {
        BuiltRun built = build_run(setup);
        out.tau_max = built.input.grid.tau_max();
        out.admissible = built.constraint.admissible;
        if (!out.admissible) {
            out.reason = "N=" + std::to_string(N) + " inadmissible: " + built.constraint.describe();
            return out;
        }
        out.traj = std::make_shared<const Trajectory>(run_scheme(built.input));
    } catch (const HypothesisViolated& e) {
        out.reason = "N=" + std::to_string(N) + ": " + e.what();
    } catch (const SolverFailure& e) {
        out.solver_failed = true;
        out.reason = "N=" + std::to_string(N) + " solver failure: " + e.what();
    }
    return out;
}

// Levels run in order; with `parallel` they run concurrently and the study
// still stops reporting at the first failed level.
std::vector<LevelRun> run_levels(const StudyPlan& plan) {
    std::vector<LevelRun> out;
    if (plan.parallel) {
        std::vector<std::future<LevelRun>> jobs;
        for (int N : plan.levels) jobs.push_back(std::async(std::launch::async, run_level, std::cref(plan), N));
        for (auto& j : jobs) out.push_back(j.get());
    } else {
        for (int N : plan.levels) {
            out.push_back(run_level(plan, N));
            if (!out.back().traj) break;
        }
    }
    return out;
}

double spread(const std::vector<double>& xs) {
    if (xs.empty()) return nan;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi / *lo;
}

void fail(StudyReport& r, const std::string& why, StudyOutcome outcome = StudyOutcome::CriteriaFailed) {
    if (r.passed) {
        r.failure = why;
        r.outcome = outcome;
    }
    r.passed = false;
}

void fail(StudyReport& r, const LevelRun& lv) {
    fail(r, lv.reason, lv.solver_failed ? StudyOutcome::SolverFailed : StudyOutcome::Inadmissible);
}

}  // namespace

StudyReport run_order_study(const StudyPlan& plan) {
    if (plan.base.problem != ProblemChoice::Manufactured)
        throw ConfigError("an order study needs the manufactured problem");
    validate_levels(plan, 3);
    StudyReport r;
    r.kind = "order";
    r.header = {"N", "tau_max", "admissible", "velocity_error", "u_error_V", "order",
                "energy_ratio", "increment_sum", "identity_rel_diff"};

    std::vector<int> Ns;
    std::vector<double> errs, energy, increment_sum;
    for (const LevelRun& lv : run_levels(plan)) {
        if (!lv.traj) {
            r.rows.push_back({double(lv.N), lv.tau_max, lv.admissible ? 1.0 : 0.0, nan, nan, nan, nan, nan, nan});
            fail(r, lv);
            break;
        }
        const ManufacturedErrors e = manufactured_errors(*lv.traj);
        const AprioriReport ap = apriori_report(*lv.traj);
        const AveragingIdentityReport eq = averaging_identity(*lv.traj);
        Ns.push_back(lv.N);
        errs.push_back(e.velocity_L2H);
        energy.push_back(ap.ratio);
        increment_sum.push_back(ap.increment_sum);
        double order = nan;
        if (Ns.size() >= 3) {
            const std::vector<int> wn(Ns.end() - 3, Ns.end());
            const std::vector<double> we(errs.end() - 3, errs.end());
            order = fitted_order(wn, we);
        }
        r.rows.push_back({double(lv.N), lv.tau_max, 1.0, e.velocity_L2H, e.max_u_V, order, ap.ratio, ap.increment_sum,
                          eq.rel_diff});
    }
    if (!r.passed) return r;

    const double overall = fitted_order(Ns, errs);
    r.summary.emplace_back("levels", std::to_string(Ns.size()));
    r.summary.emplace_back("velocity_order", format_double(overall));
    r.summary.emplace_back("energy_ratio_spread", format_double(spread(energy)));
    r.summary.emplace_back("increment_spread", format_double(spread(increment_sum)));
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (!(errs[i] < errs[i - 1]))
            fail(r, "velocity error does not decrease from N=" + std::to_string(Ns[i - 1]) + " to N=" +
                        std::to_string(Ns[i]));
    if (!(overall >= plan.order_min && overall <= plan.order_max))
        fail(r, "velocity order " + format_double(overall) + " outside [" + format_double(plan.order_min) + ", " +
                    format_double(plan.order_max) + "]");
    if (!(spread(energy) <= plan.ratio_spread)) fail(r, "energy ratio spread exceeds " + format_double(plan.ratio_spread));
    if (!(spread(increment_sum) <= plan.ratio_spread)) fail(r, "increment sum spread exceeds " + format_double(plan.ratio_spread));
    return r;
}

StudyReport run_cauchy_study(const StudyPlan& plan) {
    validate_levels(plan, 2);
    const bool manufactured = plan.base.problem == ProblemChoice::Manufactured;
    StudyReport r;
    r.kind = "cauchy";
    r.header = {"N", "tau_max", "admissible", "d", "d_ratio"};
    if (manufactured) r.header.push_back("velocity_error");

    std::optional<Interpolant> prev_v;
    std::vector<double> ds;
    std::vector<int> Ns;
    for (const LevelRun& lv : run_levels(plan)) {
        std::vector<double> row{double(lv.N), lv.tau_max, lv.admissible ? 1.0 : 0.0, nan, nan};
        if (manufactured) row.push_back(nan);
        if (!lv.traj) {
            r.rows.push_back(row);
            fail(r, lv);
            break;
        }
        const Interpolant v = make_interpolants(*lv.traj).v;
        if (prev_v) {
            const double d = std::sqrt(bochner_l2_squared(v, *prev_v, lv.traj->suite->space().mass()));
            row[3] = d;
            if (!ds.empty()) row[4] = d / ds.back();
            ds.push_back(d);
        }
        if (manufactured) row[5] = manufactured_errors(*lv.traj).velocity_L2H;
        r.rows.push_back(row);
        Ns.push_back(lv.N);
        prev_v = v;
    }
    if (!r.passed) return r;
    r.summary.emplace_back("levels", std::to_string(Ns.size()));
    for (std::size_t i = 1; i < ds.size(); ++i)
        if (!(ds[i] <= ds[i - 1]))
            fail(r, "d increases at pair N=" + std::to_string(Ns[i]) + "/" + std::to_string(Ns[i + 1]) + ": " +
                        format_double(ds[i - 1]) + " -> " + format_double(ds[i]));
    if (ds.size() >= 2) {
        const std::vector<int> wn(Ns.begin() + 1, Ns.end());
        r.summary.emplace_back("d_order", format_double(fitted_order(wn, ds)));
    }
    return r;
}

StudyReport run_hypothesis_audit(const StudyPlan& plan) {
    validate_levels(plan, 2);
    StudyReport r;
    r.kind = "hypothesis";
    r.header = {"N", "mesh_M", "tau_max", "sigma", "smallness_slack", "step_slack", "admissible",
                "u0_error_V", "tau_max_v0_V2"};

    std::vector<double> u0err, v0term, sigmas;
    std::vector<int> Ns;
    for (int N : plan.levels) {
        RunSetup setup = plan.base;
        setup.grid = level_grid(plan, N);
        // the initial data are interpolated on a mesh refined with the level
        setup.mesh_M = N;
        const TimeGrid grid = TimeGrid::build(setup.grid);
        auto [suite, ledger] = build_suite(setup);
        ledger.grid_ratio_bound = grid.tau_max() / grid.tau_min();
        const double small = ledger.smallness_slack();
        double step_slack = nan;
        bool admissible = false;
        if (ledger.smallness_holds()) {
            const StepConstraintReport c = check_step_constraint(grid, ledger);
            step_slack = c.slack;
            admissible = c.admissible;
        }
        std::vector<double> row{double(N), double(setup.mesh_M), grid.tau_max(), grid.sigma(), small,
                                step_slack, admissible ? 1.0 : 0.0, nan, nan};
        if (!admissible) {
            r.rows.push_back(row);
            fail(r, "N=" + std::to_string(N) + " inadmissible");
            continue;
        }
        const FemSpace& space = suite->space();
        RunSetup eff = setup;
        if (eff.problem == ProblemChoice::Manufactured) {
            eff.u0 = ProfileSpec{ProfileSpec::Kind::Sine, 1.0, 1};
            eff.v0 = ProfileSpec{};
        }
        const ProfileSpec u0 = eff.u0, v0 = eff.v0;
        const FemFunction u0h = space.interpolate([&](double x) { return u0(x); });
        const FemFunction v0h = space.interpolate([&](double x) { return v0(x); });
        const Eigen::VectorXd s = space.slopes(u0h);
        double e2 = 0.0;
        for (int e = 0; e < space.num_elements(); ++e) {
            const double a = space.x(e), h = space.h(e);
            for (int k = 0; k < quad::Rule5::size; ++k) {
                const double d = s[e] - u0.derivative(a + h * quad::Rule5::points[k]);
                e2 += h * quad::Rule5::weights[k] * d * d;
            }
        }
        const double vV = space.norm_V(v0h);
        row[7] = std::sqrt(e2);
        row[8] = grid.tau_max() * vV * vV;
        r.rows.push_back(row);
        Ns.push_back(N);
        u0err.push_back(row[7]);
        v0term.push_back(row[8]);
        sigmas.push_back(grid.sigma());
    }
    for (std::size_t i = 1; i < Ns.size(); ++i) {
        if (u0err[i - 1] > 0.0 && !(u0err[i] < u0err[i - 1]))
            fail(r, "initial interpolation error does not decrease at N=" + std::to_string(Ns[i]));
        if (!(sigmas[i] <= sigmas[i - 1])) fail(r, "sigma does not decrease at N=" + std::to_string(Ns[i]));
    }
    if (!v0term.empty()) {
        const double first = v0term.front();
        const double worst = *std::max_element(v0term.begin(), v0term.end());
        if (!(worst <= plan.ratio_spread * first + 1e-12)) fail(r, "tau_max |v0|_V^2 grows across levels");
        r.summary.emplace_back("max_tau_max_v0_V2", format_double(worst));
    }
    if (u0err.size() >= 2) {
        const double last = u0err.back();
        if (last > 0.0) r.summary.emplace_back("u0_error_order", format_double(fitted_order(Ns, u0err)));
    }
    return r;
}

StudyReport run_study(const StudyPlan& plan) {
    switch (plan.kind) {
        case StudyKind::Order: return run_order_study(plan);
        case StudyKind::Cauchy: return run_cauchy_study(plan);
        case StudyKind::Hypothesis: return run_hypothesis_audit(plan);
    }
    throw ConfigError("unknown study kind");
}

}  // namespace rothe
