#pragma once

#include <string>
#include <vector>

#include "rothe/scheme.hpp"

namespace rothe {

// Vector-valued function of time on a partition b_0 < ... < b_m of [0, T].
// Piecewise constant: one value per interval, taken on (b_k, b_{k+1}] (the
// first interval is closed). Piecewise linear: one value per breakpoint.
class Interpolant {
public:
    enum class Kind { PiecewiseConstant, PiecewiseLinear };

    static Interpolant piecewise_constant(std::vector<double> breaks, std::vector<Eigen::VectorXd> values);
    static Interpolant piecewise_linear(std::vector<double> breaks, std::vector<Eigen::VectorXd> values);
    // a x + b y on identical partitions and kinds
    static Interpolant combine(double a, const Interpolant& x, double b, const Interpolant& y);

    Kind kind() const { return kind_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<Eigen::VectorXd>& values() const { return values_; }
    int num_intervals() const { return static_cast<int>(breaks_.size()) - 1; }
    double start() const { return breaks_.front(); }
    double end() const { return breaks_.back(); }

    Eigen::VectorXd operator()(double t) const;
    // one-sided limits; they differ from operator() only at breakpoints
    Eigen::VectorXd limit_right(double t) const;
    Eigen::VectorXd limit_left(double t) const;
    // time derivative away from breakpoints (zero for piecewise constant)
    Eigen::VectorXd derivative(double t) const;

private:
    Interpolant(Kind kind, std::vector<double> breaks, std::vector<Eigen::VectorXd> values);
    // interval containing t for the (b_k, b_{k+1}] convention
    int interval_of(double t) const;
    Eigen::VectorXd linear_at(int k, double t) const;

    Kind kind_;
    std::vector<double> breaks_;
    std::vector<Eigen::VectorXd> values_;
};

// u_tau, v_tau, v_hat_tau, eta_tau and f_tau on the half grid
// 0, t_{1/2}, ..., t_{N-1/2}, T.
struct InterpolantSet {
    Interpolant u;
    Interpolant v;
    Interpolant v_hat;
    Interpolant eta;
    Interpolant f;
};

InterpolantSet make_interpolants(const Trajectory& traj);

// (K w)(t) = int_0^t w for a piecewise-constant w.
Eigen::VectorXd apply_K(const Interpolant& w, double t);
// start + K w as a piecewise-linear interpolant on the partition of w.
Interpolant antiderivative(const Interpolant& w, const Eigen::VectorXd& start);

// int ||a(t) - b(t)||^2 dt with ||x||^2 = x^T G x, exact for piecewise
// constant or linear arguments (Simpson on the union of the partitions).
double bochner_l2_squared(const Interpolant& a, const Interpolant& b, const SparseMatrix& gram);
double bochner_l2_squared(const Interpolant& a, const SparseMatrix& gram);

struct AveragingIdentityReport {
    double lhs = 0.0;          // |v_hat - v|^2 in L^2(0,T;H)
    double rhs = 0.0;          // (1/3) sum tau_{j+1/2} |v^j - v^{j-1}|_H^2
    double rel_diff = 0.0;
    double bound = 0.0;        // (tau_max / 3) sum |v^j - v^{j-1}|_H^2
    bool equal = false;        // rel_diff <= 1e-12
    bool bound_holds = false;
};

AveragingIdentityReport averaging_identity(const Trajectory& traj);

struct AprioriReport {
    double u_last_V2 = 0.0;     // |u^N|_V^2
    double v_last_H2 = 0.0;     // |v^{N-1}|_H^2
    double jumps_H2 = 0.0;      // sum |v^j - v^{j-1}|_H^2
    double v_W_p = 0.0;         // sum tau_{j+1/2} |v^j|_W^p
    double eta_q = 0.0;         // sum tau_{j+1/2} |eta^j|_{U*}^q
    double lhs = 0.0;
    double rhs = 0.0;           // 1 + |u^0|_V + |v^0|^2 + tau_1^2 |v^0|_V + sum tau_{j+1/2} |f^j|^q
    double ratio = 0.0;         // lhs / rhs
    double increment_sum = 0.0;           // sum tau_{j+1/2} |(v^j - v^{j-1}) / tau_{j+1/2}|_{W*}^q (surrogate)

    std::string to_text() const;
};

AprioriReport apriori_report(const Trajectory& traj);

struct BvqReport {
    double q = 2.0;
    int N = 0;
    double jump_sum = 0.0;      // sum |v^k - v^{k-1}|^q over consecutive jumps of v_tau
    double power_bound = 0.0;   // N^{q-1} jump_sum
};

// Dual norms are the H^1-dual surrogate of the H-pairing of each jump.
BvqReport bvq_diagnostics(const Trajectory& traj);

struct RecoveryReport {
    double total = 0.0;         // |u^0 + K v_tau - u_tau|_{L^2(0,T;V)}
    double first_interval = 0.0;  // contribution of [0, t_{1/2}]
    double last_interval = 0.0;   // contribution of (t_{N-1/2}, T]
    double interior = 0.0;
};

RecoveryReport recovery_defect(const Trajectory& traj);

}  // namespace rothe
