#include "rothe/time_grid.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "rothe/error.hpp"
#include "rothe/io.hpp"

namespace rothe {

namespace {

void require_count(int N) {
    if (N < 3) {
        throw ConfigError("time grid needs N >= 3 steps (got " + std::to_string(N) + ")");
    }
}

void require_horizon(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigError("time horizon T must be positive and finite");
    }
}

// Uniform double in [0, 1) from the raw 64-bit engine output; the engine
// itself is fully specified by the standard, so grids are reproducible
// across standard library implementations.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> steps) {
    const int N = static_cast<int>(steps.size());
    require_count(N);
    for (double tau : steps) {
        if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("time steps must be positive and finite");
    }

    steps_.assign(N + 1, 0.0);
    std::copy(steps.begin(), steps.end(), steps_.begin() + 1);

    nodes_.assign(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) nodes_[n] = nodes_[n - 1] + steps_[n];

    tau_half_.assign(N, 0.0);
    for (int n = 1; n <= N - 1; ++n) tau_half_[n] = 0.5 * (steps_[n] + steps_[n + 1]);

    t_half_.assign(N, 0.0);
    for (int n = 0; n <= N - 1; ++n) t_half_[n] = nodes_[n] + 0.5 * steps_[n + 1];

    ratio_.assign(N + 1, 0.0);
    for (int n = 2; n <= N; ++n) ratio_[n] = steps_[n] / steps_[n - 1];

    gamma_.assign(N + 1, 0.0);
    for (int n = 3; n <= N; ++n) gamma_[n] = std::max(0.0, 1.0 / ratio_[n] - 1.0 / ratio_[n - 1]);

    tau_max_ = *std::max_element(steps_.begin() + 1, steps_.end());
    tau_min_ = *std::min_element(steps_.begin() + 1, steps_.end());
    r_max_ = *std::max_element(ratio_.begin() + 2, ratio_.end());
    // r_min is the minimum ratio; it divides in the a priori bounds
    r_min_ = *std::min_element(ratio_.begin() + 2, ratio_.end());

    c_gamma_ = 0.0;
    for (int n = 3; n <= N; ++n) c_gamma_ = std::max(c_gamma_, gamma_[n] / steps_[n]);

    double s = 0.0;
    for (int j = 1; j <= N - 1; ++j) {
        const double d = steps_[j + 1] - steps_[j];
        s += d * d / (steps_[j + 1] + steps_[j]);
    }
    sigma_ = 0.5 * s;
}

TimeGrid TimeGrid::build(const GridSpec& spec) {
    switch (spec.kind) {
        case GridSpec::Kind::Uniform: return uniform(spec.N, spec.T);
        case GridSpec::Kind::Geometric: return geometric(spec.N, spec.T, spec.ratio);
        case GridSpec::Kind::SeededRandom: return seeded_random(spec.N, spec.T, spec.seed, spec.D);
        case GridSpec::Kind::Steps: return from_steps(spec.steps);
    }
    throw ConfigError("unknown grid kind");
}

TimeGrid TimeGrid::uniform(int N, double T) {
    require_count(N);
    require_horizon(T);
    return TimeGrid(std::vector<double>(N, T / N));
}

TimeGrid TimeGrid::geometric(int N, double T, double ratio) {
    require_count(N);
    require_horizon(T);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ConfigError("geometric ratio must be positive");
    if (ratio == 1.0) return uniform(N, T);
    std::vector<double> steps(N);
    const double first = T * (ratio - 1.0) / (std::pow(ratio, N) - 1.0);
    double tau = first;
    for (int n = 0; n < N; ++n) {
        steps[n] = tau;
        tau *= ratio;
    }
    return TimeGrid(std::move(steps));
}

TimeGrid TimeGrid::seeded_random(int N, double T, std::uint64_t seed, double D) {
    require_count(N);
    require_horizon(T);
    if (!(D >= 1.0) || !std::isfinite(D)) throw ConfigError("ratio bound D must satisfy D >= 1");
    if (D == 1.0) return uniform(N, T);

    // density rho(s) = 1 + sum_k a_k sin(2 pi k s + theta_k) with
    // sum |a_k| = A < (D-1)/(D+1), hence max rho / min rho < D
    constexpr int kModes = 3;
    std::mt19937_64 rng(seed);
    std::array<double, kModes> amp{};
    std::array<double, kModes> phase{};
    double total = 0.0;
    for (int k = 0; k < kModes; ++k) {
        amp[k] = 0.1 + unit_uniform(rng);
        phase[k] = 2.0 * std::numbers::pi * unit_uniform(rng);
        total += amp[k];
    }
    const double A = 0.999 * (D - 1.0) / (D + 1.0);
    for (double& a : amp) a *= A / total;

    auto primitive = [&](double s) {
        double value = s;
        for (int k = 0; k < kModes; ++k) {
            const double w = 2.0 * std::numbers::pi * (k + 1);
            value -= amp[k] * (std::cos(w * s + phase[k]) - std::cos(phase[k])) / w;
        }
        return value;
    };
    const double scale = T / primitive(1.0);
    std::vector<double> steps(N);
    double prev = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double cur = primitive(static_cast<double>(n) / N);
        steps[n - 1] = scale * (cur - prev);
        prev = cur;
    }
    TimeGrid grid(std::move(steps));
    if (grid.tau_max() > D * grid.tau_min()) {
        throw Error("seeded_random: generated grid violates its ratio bound");
    }
    return grid;
}

TimeGrid TimeGrid::from_steps(std::vector<double> steps) { return TimeGrid(std::move(steps)); }

double TimeGrid::t(int n) const {
    assert(n >= 0 && n <= N());
    return nodes_[n];
}

double TimeGrid::tau(int n) const {
    assert(n >= 1 && n <= N());
    return steps_[n];
}

double TimeGrid::tau_half(int n) const {
    assert(n >= 1 && n <= N() - 1);
    return tau_half_[n];
}

double TimeGrid::t_half(int n) const {
    assert(n >= 0 && n <= N() - 1);
    return t_half_[n];
}

double TimeGrid::ratio(int n) const {
    assert(n >= 2 && n <= N());
    return ratio_[n];
}

double TimeGrid::gamma(int n) const {
    assert(n >= 3 && n <= N());
    return gamma_[n];
}

bool TimeGrid::is_uniform(double rel_tol) const {
    return tau_max_ - tau_min_ <= rel_tol * tau_max_;
}

std::string TimeGrid::nodes_csv() const {
    io::CsvWriter csv({"index", "t_n"});
    for (int n = 0; n <= N(); ++n) {
        csv.cell(n).cell(nodes_[n]);
        csv.end_row();
    }
    return csv.str();
}

std::string TimeGrid::parameter_table_csv() const {
    io::CsvWriter csv({"n", "t_n", "tau_n", "tau_half", "t_half", "r_n", "gamma_n"});
    const int N = this->N();
    for (int n = 0; n <= N; ++n) {
        csv.cell(n).cell(nodes_[n]);
        if (n >= 1) csv.cell(steps_[n]); else csv.empty();
        if (n >= 1 && n <= N - 1) csv.cell(tau_half_[n]); else csv.empty();
        if (n <= N - 1) csv.cell(t_half_[n]); else csv.empty();
        if (n >= 2) csv.cell(ratio_[n]); else csv.empty();
        if (n >= 3) csv.cell(gamma_[n]); else csv.empty();
        csv.end_row();
    }
    std::string out = csv.str();
    out += "\nkey,value\n";
    auto line = [&out](const char* key, double v) {
        out += key;
        out += ',';
        out += io::format_double(v);
        out += '\n';
    };
    line("N", N);
    line("T", T());
    line("tau_max", tau_max_);
    line("tau_min", tau_min_);
    line("r_max", r_max_);
    line("r_min", r_min_);
    line("c_gamma", c_gamma_);
    line("sigma", sigma_);
    return out;
}

std::string StepConstraintReport::describe() const {
    std::ostringstream os;
    os << "tau_max=" << io::format_double(tau_max) << " bound=" << io::format_double(bound)
       << " (energy bound " << io::format_double(energy_bound) << ", 1/(2 beta) "
       << io::format_double(beta_bound) << ")";
    return os.str();
}

StepConstraintReport check_step_constraint(const TimeGrid& grid, const ConstantsLedger& ledger) {
    const double margin = ledger.smallness_slack();
    if (!(margin > 0.0)) {
        throw HypothesisViolated("hypothesis violated: mu_A = " + io::format_double(ledger.mu_A) +
                                 " <= c_M |gamma|^p = " +
                                 io::format_double(ledger.c_M * std::pow(ledger.gamma_norm, ledger.p)));
    }
    StepConstraintReport r;
    r.energy_bound = 2.0 * margin / (ledger.beta_B * ledger.embedding_WV);
    r.beta_bound = ledger.beta > 0.0 ? 1.0 / (2.0 * ledger.beta) : std::numeric_limits<double>::infinity();
    r.bound = std::min(r.energy_bound, r.beta_bound);
    r.tau_max = grid.tau_max();
    r.slack = r.bound - r.tau_max;
    r.admissible = r.tau_max < r.bound;
    r.existence_ok = ledger.beta > 0.0 ? r.tau_max < 1.0 / ledger.beta : true;
    return r;
}

}  // namespace rothe
