#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rothe/error.hpp"
#include "rothe/operators.hpp"
#include "rothe/stepper.hpp"
#include "rothe/time_grid.hpp"

namespace rothe {

// Separable load term f(t, x) = a(t) b(x).
struct LoadTerm {
    std::function<double(double)> time;
    std::function<double(double)> space;
};

class Load {
public:
    Load() = default;
    explicit Load(std::vector<LoadTerm> terms) : terms_(std::move(terms)) {}

    void add(LoadTerm term) { terms_.push_back(std::move(term)); }
    bool empty() const { return terms_.empty(); }
    const std::vector<LoadTerm>& terms() const { return terms_; }

    // pairing of f(t, .) with the free basis functions
    DualVector at(const FemSpace& space, double t) const;

private:
    std::vector<LoadTerm> terms_;
};

// Mean of a over [lo, hi], 5-point Gauss.
double time_average(const std::function<double(double)>& a, double lo, double hi);

// f^n = (1/tau_{n+1/2}) int_{t_{n-1/2}}^{t_{n+1/2}} f for n = 1..N-1, integrated
// with 5-point Gauss on each half interval. Slot 0 holds a zero vector.
std::vector<DualVector> average_rhs(const Load& load, const TimeGrid& grid, const FemSpace& space);

struct StepRecord {
    int n = 0;
    double t = 0.0;
    int iterations = 0;
    int levels = 0;
    double residual = 0.0;        // solver's own final residual
    double eps = 0.0;
    double graph_distance = 0.0;
    double certified_residual = 0.0;  // from certify_step
    bool certified = false;
};

// u^0..u^N, v^0..v^{N-1} and eta^1..eta^{N-1} with the per-step records.
// eta[0] pads with eta^1. A trajectory cut short by a solver failure holds
// the prefix computed so far.
struct Trajectory {
    std::shared_ptr<const OperatorSuite> suite;
    TimeGrid grid;
    std::vector<FemFunction> u;
    std::vector<FemFunction> v;
    std::vector<Eigen::VectorXd> eta;
    std::vector<DualVector> f;
    std::vector<StepRecord> steps;  // steps[n-1] belongs to step n

    int N() const { return grid.N(); }
    bool complete() const { return static_cast<int>(u.size()) == N() + 1; }
    // v^n for n = 0..N with v^N := v^{N-1}
    const FemFunction& v_padded(int n) const { return v[std::min(n, static_cast<int>(v.size()) - 1)]; }
    // eta^n for n = 0..N with eta^0 := eta^1, eta^N := eta^{N-1}
    const Eigen::VectorXd& eta_padded(int n) const { return eta[std::min(n, static_cast<int>(eta.size()) - 1)]; }
};

struct RunInput {
    std::shared_ptr<const OperatorSuite> suite;
    TimeGrid grid;
    FemFunction u0;
    FemFunction v0;
    Load load;
    SolverConfig solver;
    std::optional<StepConstraintReport> constraint;
};

// Raised when a step fails to converge or to certify; carries the partial
// trajectory for post-mortem analysis.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, std::shared_ptr<const Trajectory> partial)
        : Error(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return *partial_; }

private:
    std::shared_ptr<const Trajectory> partial_;
};

using StepObserver = std::function<void(const StepRecord&)>;

// Runs steps n = 1..N-1 and the final update u^N = u^{N-1} + tau_N v^{N-1}.
// Every step is certified independently; the first failure aborts the run.
// Throws InadmissibleStep before any step when the constraint is violated.
Trajectory run_scheme(const RunInput& input, const StepObserver& observer = {});

}  // namespace rothe
