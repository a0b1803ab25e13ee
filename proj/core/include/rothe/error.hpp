#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rothe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (config file, grid spec, invalid arguments).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A structural hypothesis of the problem fails, e.g. mu_A <= c_M * |gamma|^p.
class HypothesisViolated : public Error {
public:
    using Error::Error;
};

// The time grid violates the admissible step bound.
class InadmissibleStep : public Error {
public:
    using Error::Error;
};

// The step solver exhausted its iteration budget.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, Eigen::VectorXd best_iterate,
                   std::vector<double> residual_history)
        : Error(what),
          best_iterate_(std::move(best_iterate)),
          residual_history_(std::move(residual_history)) {}

    const Eigen::VectorXd& best_iterate() const { return best_iterate_; }
    const std::vector<double>& residual_history() const { return residual_history_; }

private:
    Eigen::VectorXd best_iterate_;
    std::vector<double> residual_history_;
};

}  // namespace rothe
