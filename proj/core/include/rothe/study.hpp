#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rothe/scheme.hpp"
#include "rothe/setup.hpp"

namespace rothe {

// u(t, x) = sin(pi x) cos t for problem P2 with p = 2, delta = 0, g(s) = s and
// j(s) = s^2 / 2, so that f = sin(pi x) [pi^2 cos t - (alpha pi^2 + 2) sin t].
struct ManufacturedCase {
    double alpha = 1.0;
    Load load;

    static double u(double t, double x);
    static double u_t(double t, double x);
    static double u_tt(double t, double x);
    static double u_xx(double t, double x);
    static double u_txx(double t, double x);
    double f(double t, double x) const;
    // u'' - alpha u_txx + g(u') - u_xx + u + eta - f with eta = u'
    double pointwise_residual(double t, double x) const;
};

ManufacturedCase manufactured_case(double alpha = 1.0);

struct ManufacturedErrors {
    double velocity_L2H = 0.0;   // |v_tau - u'|_{L^2(0,T;H)}
    double max_u_V = 0.0;        // max_n |u^n - u(t_n)|_V
};

// Time integrals are exact; spatial pairings with sin(pi x) use 5-point Gauss.
ManufacturedErrors manufactured_errors(const Trajectory& traj);

// Least-squares slope of log(err) against log(N), negated.
double fitted_order(const std::vector<int>& N, const std::vector<double>& err);

enum class StudyKind { Order, Cauchy, Hypothesis };

struct StudyPlan {
    StudyKind kind = StudyKind::Order;
    RunSetup base;
    std::vector<int> levels;
    std::uint64_t seed = 1;       // seeded-random grid families
    bool parallel = false;        // run levels concurrently
    // acceptance brackets
    double order_min = 0.8;
    double order_max = 2.2;
    double ratio_spread = 10.0;
};

enum class StudyOutcome { Passed, CriteriaFailed, Inadmissible, SolverFailed };

// One row per level; NaN marks a cell without a value.
struct StudyReport {
    std::string kind;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
    bool passed = true;
    StudyOutcome outcome = StudyOutcome::Passed;
    std::string failure;     // first failure only

    double value(std::size_t row, const std::string& column) const;
    std::string csv() const;
    std::string summary_text() const;
};

StudyReport run_order_study(const StudyPlan& plan);
StudyReport run_cauchy_study(const StudyPlan& plan);
StudyReport run_hypothesis_audit(const StudyPlan& plan);
StudyReport run_study(const StudyPlan& plan);

}  // namespace rothe
