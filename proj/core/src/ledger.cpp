#include "rothe/ledger.hpp"

#include <cmath>

namespace rothe {

double ConstantsLedger::smallness_slack() const {
    return mu_A - c_M * std::pow(gamma_norm, p);
}

std::map<std::string, double> ConstantsLedger::symbols() const {
    return {
        {"p", p},
        {"q", q},
        {"mu_A", mu_A},
        {"beta_A", beta_A},
        {"beta", beta},
        {"lambda", lambda},
        {"mu_B", mu_B},
        {"beta_B", beta_B},
        {"beta_C", beta_C},
        {"delta", delta},
        {"c_M", c_M},
        {"c_j", c_j},
        {"c_g", c_g},
        {"c_q", c_q},
        {"alpha", alpha},
        {"gamma_norm", gamma_norm},
        {"gamma_norm_raw", gamma_norm_raw},
        {"i_WV", embedding_WV},
        {"poincare", poincare},
        {"D", grid_ratio_bound},
        {"c_A", c_A},
        {"domain_measure", domain_measure},
        {"boundary_measure", boundary_measure},
    };
}

}  // namespace rothe
