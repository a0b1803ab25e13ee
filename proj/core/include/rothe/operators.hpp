#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rothe/fem1d.hpp"
#include "rothe/laws.hpp"
#include "rothe/ledger.hpp"

namespace rothe {

// P1: Dirichlet at one end (x = 0 by default), multivalued term at the other.
// P2: Dirichlet at both ends, multivalued term over the whole interval.
enum class ProblemKind { P1, P2 };

const char* to_string(ProblemKind kind);

struct SuiteParams {
    ProblemKind problem = ProblemKind::P2;
    double p = 2.0;
    double delta = 0.0;
    double alpha = 1.0;
    ScalarLaw g = ScalarLaw::zero();
    PotentialGraph j = PotentialGraph::quadratic();
    bool include_B = true;  // false switches B0 and C off (unit tests)
};

// Default Dirichlet split of each problem.
Dirichlet dirichlet_for(ProblemKind kind);

// Discrete operators of the inclusion
//   v' + A(t, v) + B(t, u) + gamma^* eta = f,  eta in M(gamma v),
// with A v = -alpha (|v'|^{p-2} v')' + g(v) and B u = -u'' + |u|^delta u.
// The multivalued term is sampled at selection sites: the free boundary node
// for P1 (weight 1) and every free node for P2 (lumped-mass weights).
// Immutable; every member is reentrant.
class OperatorSuite {
public:
    OperatorSuite(std::shared_ptr<const FemSpace> space, SuiteParams params);

    const FemSpace& space() const { return *space_; }
    std::shared_ptr<const FemSpace> space_ptr() const { return space_; }
    const SuiteParams& params() const { return params_; }
    ProblemKind problem() const { return params_.problem; }
    double p() const { return params_.p; }
    double q() const { return params_.p / (params_.p - 1.0); }

    DualVector apply_pLaplacian(const FemFunction& v) const;  // without alpha
    DualVector apply_g(const FemFunction& v) const;
    DualVector apply_A(double t, const FemFunction& v) const;
    // Jacobian of apply_A; the weight |v'|^{p-2} is floored at `floor`.
    SparseMatrix tangent_A(double t, const FemFunction& v, double floor) const;

    struct BParts {
        DualVector b0;
        DualVector c;
        DualVector total() const { return b0 + c; }
    };
    BParts apply_B(double t, const FemFunction& u) const;
    // C(t, u) = |u|^delta u against the basis, 3-point Gauss
    DualVector apply_C(const FemFunction& u) const;

    int num_sites() const { return static_cast<int>(site_index_.size()); }
    const std::vector<int>& site_indices() const { return site_index_; }
    const Eigen::VectorXd& site_weights() const { return site_weight_; }
    // values of gamma v at the selection sites
    Eigen::VectorXd gamma(const FemFunction& v) const;
    // gamma^* eta as a dual vector
    DualVector gamma_adjoint(const Eigen::VectorXd& eta) const;
    // |eta|_{U*}: |eta| at the boundary for P1, lumped L^q norm for P2
    double eta_dual_norm(const Eigen::VectorXd& eta) const;
    // |gamma v|_U
    double gamma_value_norm(const FemFunction& v) const;

private:
    std::shared_ptr<const FemSpace> space_;
    SuiteParams params_;
    std::vector<int> site_index_;
    Eigen::VectorXd site_weight_;
};

struct GammaNormEstimate {
    double raw = 0.0;
    double inflated = 0.0;  // raw * 1.05
    bool verified = false;
};

// |gamma|_{L(W,U)}: the trace quotient for P1, the p-Poincare constant to the
// power 1/p for P2, maximised over the FEM space and inflated by 5%.
GammaNormEstimate estimate_gamma_norm(const FemSpace& space, ProblemKind kind, double p);

// Fills every hypothesis constant for the example problems. c_q is taken as
// c_g. The smallness condition is a report outcome (ConstantsLedger::smallness_slack), not an error.
ConstantsLedger compute_example_constants(const OperatorSuite& suite, double grid_ratio_bound = 1.0);

struct AuditCheck {
    std::string name;
    int samples = 0;
    double min_slack = 0.0;  // relative slack, negative on violation
    bool passed = true;
    std::string witness;     // description of the worst sample when violated
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    bool smallness_holds = false;
    double smallness_slack = 0.0;

    bool passed() const;
    std::string to_text() const;
};

// Sampling audit of H(A)(ii)-(iii), monotonicity of the p-Laplacian, H(g),
// H(C)(ii)-(iii), the growth of the subdifferential and H(M)(iii).
// Deterministic given the seed.
AuditReport audit_hypotheses(const OperatorSuite& suite, const ConstantsLedger& ledger, int samples,
                             std::uint64_t seed);

}  // namespace rothe
