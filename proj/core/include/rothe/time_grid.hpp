#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rothe/ledger.hpp"

namespace rothe {

// How to build a partition of [0, T].
struct GridSpec {
    enum class Kind { Uniform, Geometric, SeededRandom, Steps };

    Kind kind = Kind::Uniform;
    int N = 0;
    double T = 1.0;
    double ratio = 1.0;          // Geometric: tau_{n+1} / tau_n
    std::uint64_t seed = 0;      // SeededRandom
    double D = 1.0;              // SeededRandom: tau_max <= D tau_min
    std::vector<double> steps;   // Steps: explicit tau_1..tau_N
};

// Partition 0 = t_0 < ... < t_N = T together with every derived parameter
// of the variable-step scheme. Indices follow the mathematical convention:
// tau(n) for n = 1..N, tau_half(n) = (tau_n + tau_{n+1})/2 for n = 1..N-1,
// t_half(n) = t_n + tau_{n+1}/2 for n = 0..N-1, ratio(n) = tau_n/tau_{n-1}
// for n = 2..N and gamma(n) = max(0, 1/r_n - 1/r_{n-1}) for n = 3..N.
// Immutable after construction.
class TimeGrid {
public:
    static TimeGrid build(const GridSpec& spec);
    static TimeGrid uniform(int N, double T);
    static TimeGrid geometric(int N, double T, double ratio);
    // Steps follow a random smooth density so that the family over N
    // satisfies tau_max <= D tau_min and sigma -> 0.
    static TimeGrid seeded_random(int N, double T, std::uint64_t seed, double D);
    static TimeGrid from_steps(std::vector<double> steps);

    int N() const { return static_cast<int>(steps_.size()) - 1; }
    double T() const { return nodes_.back(); }

    double t(int n) const;
    double tau(int n) const;
    double tau_half(int n) const;
    double t_half(int n) const;
    double ratio(int n) const;
    double gamma(int n) const;

    double tau_max() const { return tau_max_; }
    double tau_min() const { return tau_min_; }
    double r_max() const { return r_max_; }
    double r_min() const { return r_min_; }
    double c_gamma() const { return c_gamma_; }
    double sigma() const { return sigma_; }

    std::span<const double> nodes() const { return nodes_; }
    // tau_1..tau_N (no padding)
    std::span<const double> steps() const { return std::span<const double>(steps_).subspan(1); }

    bool is_uniform(double rel_tol = 1e-12) const;

    // Two-column CSV: index, t_n.
    std::string nodes_csv() const;
    // Full parameter table followed by a key,value summary block.
    std::string parameter_table_csv() const;

private:
    explicit TimeGrid(std::vector<double> steps);

    // Slot 0 is unused in every 1-based array.
    std::vector<double> nodes_;
    std::vector<double> steps_;
    std::vector<double> tau_half_;
    std::vector<double> t_half_;
    std::vector<double> ratio_;
    std::vector<double> gamma_;
    double tau_max_ = 0, tau_min_ = 0, r_max_ = 1, r_min_ = 1, c_gamma_ = 0, sigma_ = 0;
};

// Result of testing tau_max against
//   min{ 2(mu_A - c_M |gamma|^p) / (beta_B |i_WV|), 1/(2 beta) }.
struct StepConstraintReport {
    double energy_bound = 0;     // first entry of the min
    double beta_bound = 0;       // 1/(2 beta), +inf when beta = 0
    double bound = 0;
    double tau_max = 0;
    double slack = 0;            // bound - tau_max
    bool admissible = false;     // tau_max < bound
    bool existence_ok = false;   // tau_max < 1/beta

    std::string describe() const;
};

// Throws HypothesisViolated when mu_A <= c_M |gamma|^p (the bound would be
// nonpositive).
StepConstraintReport check_step_constraint(const TimeGrid& grid, const ConstantsLedger& ledger);

}  // namespace rothe
