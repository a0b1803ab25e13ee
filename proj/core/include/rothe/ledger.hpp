#pragma once

#include <functional>
#include <map>
#include <string>

namespace rothe {

// Every constant that enters a hypothesis, an admissibility bound, or a
// derived example constant. Values are plain numbers; which of them were
// measured numerically (Poincare constant, |gamma|) is recorded alongside.
struct ConstantsLedger {
    // growth exponent and its conjugate, 1/p + 1/q = 1
    double p = 2.0;
    double q = 2.0;

    // A: growth, coercivity  <A v, v> >= mu_A |v|_W^p - beta |v|_H^2 - lambda
    double mu_A = 1.0;
    double beta_A = 1.0;
    double beta = 0.0;
    double lambda = 0.0;

    // B = B0 + C
    double mu_B = 1.0;
    double beta_B = 1.0;
    double beta_C = 1.0;
    double delta = 0.0;
    // modulus of continuity for C; sampled by the audit, never used in a bound
    std::function<double(double)> c_modulus;

    // multivalued term
    double c_M = 0.0;
    double c_j = 0.0;
    double c_g = 0.0;
    double c_q = 0.0;
    double alpha = 1.0;  // principal coefficient alpha_1 or alpha_2

    double gamma_norm = 1.0;       // |gamma|_{L(W,U)}, inflated estimate
    double gamma_norm_raw = 1.0;   // numerical maximiser before inflation
    double embedding_WV = 1.0;     // |i_WV|_{L(W,V)}
    double poincare = 1.0;         // c~_1 or c~_2
    bool poincare_verified = true;

    double grid_ratio_bound = 1.0;  // D in tau_max <= D tau_min

    double c_A = 0.0;
    double domain_measure = 1.0;    // |Omega|
    double boundary_measure = 1.0;  // |Gamma_2|

    // mu_A - c_M |gamma|^p; positive iff the smallness condition holds
    double smallness_slack() const;
    bool smallness_holds() const { return smallness_slack() > 0.0; }

    // Name -> value view of every scalar symbol, used for reports and for
    // checking that no formula reaches for a constant outside the ledger.
    std::map<std::string, double> symbols() const;
};

}  // namespace rothe
