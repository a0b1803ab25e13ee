#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rothe/error.hpp"
#include "rothe/operators.hpp"

using namespace rothe;

namespace {

std::shared_ptr<const OperatorSuite> make(ProblemKind kind, double p, int M, SuiteParams params,
                                          std::optional<Dirichlet> split = std::nullopt) {
    params.problem = kind;
    params.p = p;
    auto space = std::make_shared<const FemSpace>(FemSpace::uniform(M, split.value_or(dirichlet_for(kind)), p));
    return std::make_shared<const OperatorSuite>(space, params);
}

FemFunction random_function(const FemSpace& s, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> U(-scale, scale);
    FemFunction v(s.dim());
    for (int i = 0; i < s.dim(); ++i) v[i] = U(rng);
    return v;
}

// (1/p) int |v'|^p, exact for P1
double p_energy(const FemSpace& s, const FemFunction& v, double p) {
    const Eigen::VectorXd sl = s.slopes(v);
    double e = 0;
    for (int k = 0; k < s.num_elements(); ++k) e += s.h(k) * std::pow(std::abs(sl[k]), p) / p;
    return e;
}

// int |u|^{delta+2} / (delta+2) with a 20-point composite midpoint rule per element
double c_energy(const FemSpace& s, const FemFunction& u, double delta) {
    const Eigen::VectorXd nodal = s.to_nodal(u);
    double e = 0;
    const int n = 400;
    for (int k = 0; k < s.num_elements(); ++k) {
        for (int i = 0; i < n; ++i) {
            const double xi = (i + 0.5) / n;
            const double val = (1 - xi) * nodal[k] + xi * nodal[k + 1];
            e += s.h(k) / n * std::pow(std::abs(val), delta + 2) / (delta + 2);
        }
    }
    return e;
}

}  // namespace

TEST(Operators, ApplyAHandExamples) {
    SuiteParams prm;
    prm.g = ScalarLaw::zero();
    auto p2 = make(ProblemKind::P2, 2.0, 16, prm);
    EXPECT_EQ(p2->apply_A(0.0, FemFunction::Zero(p2->space().dim())).norm(), 0.0);
    std::mt19937_64 rng(1);
    const FemFunction v = random_function(p2->space(), rng);
    EXPECT_LT((p2->apply_A(0.0, v) - p2->space().stiffness() * v).norm(), 1e-12);

    auto p1 = make(ProblemKind::P1, 3.0, 10, prm);
    const FemFunction ramp = p1->space().interpolate([](double x) { return x; });
    EXPECT_NEAR(p1->apply_A(0.0, ramp).dot(ramp), 1.0, 1e-13);
    EXPECT_NEAR(p1->apply_A(0.0, ramp).dot(ramp), std::pow(p1->space().norm_W(ramp), 3.0), 1e-13);
}

TEST(Operators, ApplyBHandExamples) {
    SuiteParams prm;
    prm.delta = 0.0;
    auto p1 = make(ProblemKind::P1, 2.0, 10, prm);
    const FemSpace& s = p1->space();
    EXPECT_EQ(p1->apply_B(0.0, FemFunction::Zero(s.dim())).total().norm(), 0.0);
    const FemFunction ramp = s.interpolate([](double x) { return x; });
    EXPECT_NEAR(p1->apply_B(0.0, ramp).total().dot(ramp), 1.0 + 1.0 / 3.0, 1e-13);
    std::mt19937_64 rng(2);
    const FemFunction u = random_function(s, rng);
    EXPECT_LT((p1->apply_C(u) - s.mass() * u).norm(), 1e-13);
    EXPECT_LT((p1->apply_B(0.0, u).b0 - s.stiffness() * u).norm(), 1e-13);
}

TEST(Operators, PairingsAreGradientsOfEnergies) {
    std::mt19937_64 rng(7);
    for (double p : {2.0, 3.0, 4.0}) {
        SuiteParams prm;
        prm.delta = 1.0 - 2.0 / p;
        auto suite = make(ProblemKind::P2, p, 12, prm);
        const FemSpace& s = suite->space();
        for (int k = 0; k < 5; ++k) {
            // a positive v keeps |u|^delta u smooth, where 3-point Gauss is accurate
            const FemFunction v = random_function(s, rng, 0.5) + FemFunction::Constant(s.dim(), 1.5);
            const FemFunction w = random_function(s, rng);
            const double h = 1e-5;
            const double fd_p = (p_energy(s, v + h * w, p) - p_energy(s, v - h * w, p)) / (2 * h);
            EXPECT_NEAR(suite->apply_pLaplacian(v).dot(w), fd_p, 1e-6 * std::max(1.0, std::abs(fd_p)));
            if (prm.delta > 0) {
                // 3-point Gauss against a fine midpoint reference
                const double fd_c = (c_energy(s, v + h * w, prm.delta) - c_energy(s, v - h * w, prm.delta)) / (2 * h);
                EXPECT_NEAR(suite->apply_C(v).dot(w), fd_c, 1e-5 * std::max(1.0, std::abs(fd_c)));
            }
        }
    }
}

TEST(Operators, TangentMatchesCentralDifferences) {
    std::mt19937_64 rng(13);
    for (double p : {2.0, 3.0, 5.0}) {
        for (ScalarLaw g : {ScalarLaw::arctan(), ScalarLaw::power(0.7, p)}) {
            SuiteParams prm;
            prm.g = g;
            prm.alpha = 1.3;
            auto suite = make(ProblemKind::P1, p, 15, prm);
            const FemSpace& s = suite->space();
            const FemFunction v = random_function(s, rng, 1.5), w = random_function(s, rng);
            const double h = 1e-6;
            const DualVector fd = (suite->apply_A(0, v + h * w) - suite->apply_A(0, v - h * w)) / (2 * h);
            const DualVector jw = suite->tangent_A(0, v, 1e-12) * w;
            EXPECT_LE((jw - fd).norm(), 1e-6 * std::max(1.0, fd.norm())) << "p=" << p << " g=" << g.name();
        }
    }
}

TEST(Operators, SelectionSitesAndGammaMaps) {
    SuiteParams prm;
    auto p1 = make(ProblemKind::P1, 2.0, 8, prm);
    EXPECT_EQ(p1->num_sites(), 1);
    const FemFunction ramp = p1->space().interpolate([](double x) { return x; });
    EXPECT_DOUBLE_EQ(p1->gamma(ramp)[0], 1.0);
    Eigen::VectorXd eta(1);
    eta << 2.5;
    const DualVector ga = p1->gamma_adjoint(eta);
    EXPECT_DOUBLE_EQ(ga.dot(ramp), 2.5);
    EXPECT_DOUBLE_EQ(p1->eta_dual_norm(eta), 2.5);

    auto p1r = make(ProblemKind::P1, 2.0, 8, prm, Dirichlet::Right);
    const FemFunction down = p1r->space().interpolate([](double x) { return 1 - x; });
    EXPECT_DOUBLE_EQ(p1r->gamma(down)[0], 1.0);

    auto p2 = make(ProblemKind::P2, 2.0, 8, prm);
    EXPECT_EQ(p2->num_sites(), 7);
    EXPECT_NEAR(p2->site_weights().sum(), 7.0 / 8.0, 1e-15);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(7);
    EXPECT_NEAR(p2->eta_dual_norm(ones), std::sqrt(7.0 / 8.0), 1e-15);
}

TEST(Operators, SuiteValidation) {
    SuiteParams prm;
    EXPECT_THROW(make(ProblemKind::P2, 1.5, 4, prm), ConfigError);
    prm.delta = 0.5;
    EXPECT_THROW(make(ProblemKind::P2, 3.0, 4, prm), ConfigError);  // 0.5 > 1 - 2/3
    EXPECT_NO_THROW(make(ProblemKind::P2, 4.0, 4, prm));
    prm.delta = 0.0;
    prm.g = ScalarLaw::identity();
    EXPECT_THROW(make(ProblemKind::P2, 3.0, 4, prm), ConfigError);
    prm.g = ScalarLaw::zero();
    EXPECT_THROW(make(ProblemKind::P1, 2.0, 4, prm, Dirichlet::Both), ConfigError);
    EXPECT_THROW(make(ProblemKind::P2, 2.0, 4, prm, Dirichlet::Left), ConfigError);
    prm.alpha = -1.0;
    EXPECT_THROW(make(ProblemKind::P2, 2.0, 4, prm), ConfigError);
}

TEST(Constants, JumpCoefficientHandExample) {
    SuiteParams prm;
    prm.j = PotentialGraph::quadratic().scaled(0.1);
    prm.alpha = 1.0;
    auto p1 = make(ProblemKind::P1, 2.0, 40, prm);
    const ConstantsLedger L = compute_example_constants(*p1);
    EXPECT_NEAR(L.c_M, 0.1 * std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(L.gamma_norm_raw, 1.0, 1e-9);
    EXPECT_NEAR(L.gamma_norm, 1.05 * L.gamma_norm_raw, 1e-15);
    // with the raw bound |gamma| <= 1 the slack is alpha - c_M >= 0.858
    EXPECT_GE(1.0 - L.c_M * std::pow(L.gamma_norm_raw, 2.0), 0.858 - 1e-9);
    EXPECT_NEAR(L.smallness_slack(), 1.0 - L.c_M * 1.05 * 1.05, 1e-9);
    EXPECT_TRUE(L.smallness_holds());
}

TEST(Constants, LedgerClosure) {
    SuiteParams prm;
    prm.g = ScalarLaw::arctan();
    auto suite = make(ProblemKind::P2, 3.0, 30, prm);
    const ConstantsLedger L = compute_example_constants(*suite, 2.0);
    const auto sym = L.symbols();
    for (const char* name : {"mu_A", "beta_A", "beta", "lambda", "mu_B", "beta_B", "beta_C", "c_M", "c_g", "c_j",
                             "delta", "alpha", "gamma_norm", "i_WV", "poincare", "D", "p", "q"}) {
        ASSERT_TRUE(sym.count(name)) << name;
        EXPECT_TRUE(std::isfinite(sym.at(name))) << name;
    }
    EXPECT_EQ(sym.at("D"), 2.0);
    EXPECT_NEAR(L.c_g, M_PI / 2, 1e-15);
    EXPECT_NEAR(L.q, 1.5, 1e-15);
    ASSERT_TRUE(L.c_modulus);
    EXPECT_GT(L.c_modulus(1.0), 0.0);
}

TEST(Audit, PassesOnExampleSuites) {
    struct Case {
        ProblemKind kind;
        double p, delta;
        ScalarLaw g;
        PotentialGraph j;
    };
    const std::vector<Case> cases{
        {ProblemKind::P1, 2.0, 0.0, ScalarLaw::arctan(), PotentialGraph::jump()},
        {ProblemKind::P1, 3.0, 0.2, ScalarLaw::power(0.5, 3.0), PotentialGraph::abs()},
        {ProblemKind::P2, 2.0, 0.0, ScalarLaw::identity(), PotentialGraph::quadratic()},
        {ProblemKind::P2, 3.0, 1.0 / 3.0, ScalarLaw::arctan(), PotentialGraph::double_well()},
        {ProblemKind::P2, 4.0, 0.5, ScalarLaw::zero(), PotentialGraph::jump().scaled(0.3)},
    };
    for (const Case& c : cases) {
        SuiteParams prm;
        prm.delta = c.delta;
        prm.g = c.g;
        prm.j = c.j;
        prm.alpha = 3.0;
        auto suite = make(c.kind, c.p, 24, prm);
        const ConstantsLedger L = compute_example_constants(*suite);
        const AuditReport r = audit_hypotheses(*suite, L, 48, 5);
        EXPECT_TRUE(r.passed()) << r.to_text();
        EXPECT_EQ(r.checks.size(), 9u);
        EXPECT_EQ(r.to_text(), audit_hypotheses(*suite, L, 48, 5).to_text());
    }
}

TEST(Audit, DetectsWrongConstants) {
    SuiteParams prm;
    prm.g = ScalarLaw::arctan();
    prm.j = PotentialGraph::jump();
    auto suite = make(ProblemKind::P1, 2.0, 20, prm);
    ConstantsLedger L = compute_example_constants(*suite);
    L.c_A = 0.01;
    L.beta_A = 0.01;
    L.c_j = 0.01;
    const AuditReport r = audit_hypotheses(*suite, L, 32, 1);
    EXPECT_FALSE(r.passed());
    bool a_growth_failed = false, j_failed = false;
    for (const AuditCheck& c : r.checks) {
        if (c.name == "A.growth") a_growth_failed = !c.passed;
        if (c.name == "j.growth") j_failed = !c.passed;
        if (c.name == "A.monotonicity") EXPECT_TRUE(c.passed);
    }
    EXPECT_TRUE(a_growth_failed);
    EXPECT_TRUE(j_failed);
}

TEST(Audit, ReportsSmallnessViolation) {
    SuiteParams prm;
    prm.alpha = 1.0;
    prm.j = PotentialGraph::jump();
    auto suite = make(ProblemKind::P1, 2.0, 20, prm);
    const ConstantsLedger L = compute_example_constants(*suite);
    EXPECT_FALSE(L.smallness_holds());
    const AuditReport r = audit_hypotheses(*suite, L, 16, 1);
    EXPECT_FALSE(r.smallness_holds);
    EXPECT_LT(r.smallness_slack, 0.0);
}
