#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rothe {

// Pointwise law g in the damping operator.
class ScalarLaw {
public:
    enum class Kind { Zero, Arctan, Identity, Power };

    static ScalarLaw zero();
    static ScalarLaw arctan();
    // g(s) = s; satisfies the growth bound only for p = 2
    static ScalarLaw identity();
    // g(s) = c |s|^{p-2} s
    static ScalarLaw power(double c, double p);

    double operator()(double s) const;
    double derivative(double s) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    // c_g with |g(s)| <= c_g (1 + |s|^{p-1})
    double growth_constant() const { return c_g_; }
    // declared lower bound of g(s) s
    double lower_bound_gs() const { return inf_gs_; }
    bool nondecreasing() const { return true; }

private:
    ScalarLaw(Kind kind, std::string name, double c, double p, double c_g, double inf_gs)
        : kind_(kind), name_(std::move(name)), c_(c), p_(p), c_g_(c_g), inf_gs_(inf_gs) {}

    Kind kind_;
    std::string name_;
    double c_ = 0.0;
    double p_ = 2.0;
    double c_g_ = 0.0;
    double inf_gs_ = 0.0;
};

// Locally Lipschitz potential j with j(0) = 0 and a piecewise-linear density
// rho = j'. Pieces are separated by breakpoints b_1 < ... < b_k; on piece i the
// density is slope_i s + intercept_i. The Clarke subdifferential is the
// singleton {rho(s)} off the breakpoints and the interval spanned by the two
// one-sided limits at a breakpoint.
class PotentialGraph {
public:
    struct Piece {
        double slope = 0.0;
        double intercept = 0.0;
    };

    PotentialGraph(std::string name, std::vector<double> breakpoints, std::vector<Piece> pieces,
                   double growth_constant);

    static PotentialGraph zero();
    // j(s) = s^2 / 2
    static PotentialGraph quadratic();
    // j(s) = |s|
    static PotentialGraph abs();
    // rho(s) = s for s < 1, s/2 for s >= 1 (nonconvex, downward jump at 1)
    static PotentialGraph jump();
    // j(s) = (|s| - 1)^2 / 2, nonconvex with a kink at 0
    static PotentialGraph double_well();

    // k j for k > 0
    PotentialGraph scaled(double k) const;

    const std::string& name() const { return name_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool smooth() const { return breaks_.empty(); }

    double potential(double s) const;
    // rho at a non-breakpoint; at a breakpoint the average of the one-sided limits
    double density(double s) const;
    std::pair<double, double> subdiff_interval(double s) const;
    // rho_eps(s) = (1 / 2 eps) int_{s-eps}^{s+eps} rho
    double regularized(double s, double eps) const;
    double regularized_derivative(double s, double eps) const;
    // Euclidean distance from (s, eta) to the filled graph of the subdifferential.
    double graph_distance(double s, double eta) const;

    // c_j with |eta| <= c_j (1 + |s|^{p-1}) for eta in the subdifferential, p >= 2
    double growth_constant() const { return c_j_; }
    // largest |slope| over the pieces
    double max_slope() const;
    // largest one-sided gap at a breakpoint
    double max_jump() const;

private:
    int piece_index(double s) const;
    double left_limit(int b) const;
    double right_limit(int b) const;
    // int_a^b rho for a <= b
    double integral(double a, double b) const;

    std::string name_;
    std::vector<double> breaks_;
    std::vector<Piece> pieces_;
    double c_j_;
};

}  // namespace rothe
