#include "rothe/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "rothe/error.hpp"
#include "rothe/io.hpp"
#include "rothe/quadrature.hpp"

namespace rothe {

namespace {

using Rule = quad::Rule3;

double signed_pow(double x, double e) {
    return x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), e), x);
}

// sum over elements and Gauss points of w * f(value) * basis, scattered to nodes
template <class F>
Eigen::VectorXd gauss_pairing(const FemSpace& space, const Eigen::VectorXd& nodal, F&& f) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.num_nodes());
    for (int e = 0; e < space.num_elements(); ++e) {
        for (int g = 0; g < Rule::size; ++g) {
            const double xi = Rule::points[g];
            const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
            const double w = Rule::weights[g] * space.h(e) * f(val);
            out[e] += w * (1.0 - xi);
            out[e + 1] += w * xi;
        }
    }
    return out;
}

}  // namespace

const char* to_string(ProblemKind kind) { return kind == ProblemKind::P1 ? "P1" : "P2"; }

Dirichlet dirichlet_for(ProblemKind kind) {
    return kind == ProblemKind::P1 ? Dirichlet::Left : Dirichlet::Both;
}

OperatorSuite::OperatorSuite(std::shared_ptr<const FemSpace> space, SuiteParams params)
    : space_(std::move(space)), params_(std::move(params)) {
    if (!space_) throw ConfigError("operator suite needs a space");
    const double p = params_.p;
    if (!(p >= 2.0)) throw ConfigError("p must satisfy p >= 2");
    if (space_->p() != p) throw ConfigError("space and suite disagree on p");
    if (!(params_.delta >= 0.0) || params_.delta > 1.0 - 2.0 / p + 1e-14) {
        throw ConfigError("delta must satisfy 0 <= delta <= 1 - 2/p");
    }
    if (!(params_.alpha >= 0.0)) throw ConfigError("alpha must be nonnegative");
    if (params_.g.kind() == ScalarLaw::Kind::Identity && p != 2.0) {
        throw ConfigError("g = identity requires p = 2");
    }
    const bool split_ok = params_.problem == ProblemKind::P1 ? space_->dirichlet() != Dirichlet::Both
                                                              : space_->dirichlet() == Dirichlet::Both;
    if (!split_ok) {
        throw ConfigError(std::string("space boundary split does not match problem ") + to_string(params_.problem));
    }

    if (params_.problem == ProblemKind::P1) {
        site_index_.push_back(space_->free_index(*space_->neumann_node()));
        site_weight_ = Eigen::VectorXd::Ones(1);
    } else {
        site_index_.resize(space_->dim());
        for (int i = 0; i < space_->dim(); ++i) site_index_[i] = i;
        site_weight_ = space_->lumped_mass();
    }
}

DualVector OperatorSuite::apply_pLaplacian(const FemFunction& v) const {
    const FemSpace& s = *space_;
    const Eigen::VectorXd slope = s.slopes(v);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(s.num_nodes());
    for (int e = 0; e < s.num_elements(); ++e) {
        const double flux = signed_pow(slope[e], params_.p - 1.0);
        out[e] -= flux;
        out[e + 1] += flux;
    }
    return s.from_nodal(out);
}

DualVector OperatorSuite::apply_g(const FemFunction& v) const {
    if (params_.g.kind() == ScalarLaw::Kind::Zero) return DualVector::Zero(v.size());
    const ScalarLaw& g = params_.g;
    return space_->from_nodal(gauss_pairing(*space_, space_->to_nodal(v), [&g](double s) { return g(s); }));
}

DualVector OperatorSuite::apply_A(double /*t*/, const FemFunction& v) const {
    return params_.alpha * apply_pLaplacian(v) + apply_g(v);
}

SparseMatrix OperatorSuite::tangent_A(double /*t*/, const FemFunction& v, double floor) const {
    const FemSpace& s = *space_;
    const Eigen::VectorXd slope = s.slopes(v);
    const Eigen::VectorXd nodal = s.to_nodal(v);
    const double p = params_.p;
    const bool with_g = params_.g.kind() != ScalarLaw::Kind::Zero;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(s.num_elements()) * 4);
    for (int e = 0; e < s.num_elements(); ++e) {
        const double weight = p == 2.0 ? 1.0 : std::max(std::pow(std::abs(slope[e]), p - 2.0), floor);
        const double k = params_.alpha * (p - 1.0) * weight / s.h(e);
        double m00 = 0.0, m01 = 0.0, m11 = 0.0;
        if (with_g) {
            for (int g = 0; g < Rule::size; ++g) {
                const double xi = Rule::points[g];
                const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
                const double w = Rule::weights[g] * s.h(e) * params_.g.derivative(val);
                m00 += w * (1.0 - xi) * (1.0 - xi);
                m01 += w * (1.0 - xi) * xi;
                m11 += w * xi * xi;
            }
        }
        const int a = s.free_index(e);
        const int b = s.free_index(e + 1);
        if (a >= 0) trip.emplace_back(a, a, k + m00);
        if (b >= 0) trip.emplace_back(b, b, k + m11);
        if (a >= 0 && b >= 0) {
            trip.emplace_back(a, b, -k + m01);
            trip.emplace_back(b, a, -k + m01);
        }
    }
    SparseMatrix J(s.dim(), s.dim());
    J.setFromTriplets(trip.begin(), trip.end());
    return J;
}

DualVector OperatorSuite::apply_C(const FemFunction& u) const {
    const double delta = params_.delta;
    auto c = [delta](double s) { return delta == 0.0 ? s : signed_pow(s, 1.0 + delta); };
    return space_->from_nodal(gauss_pairing(*space_, space_->to_nodal(u), c));
}

OperatorSuite::BParts OperatorSuite::apply_B(double /*t*/, const FemFunction& u) const {
    BParts parts;
    if (!params_.include_B) {
        parts.b0 = DualVector::Zero(u.size());
        parts.c = DualVector::Zero(u.size());
        return parts;
    }
    parts.b0 = space_->stiffness() * u;
    parts.c = apply_C(u);
    return parts;
}

Eigen::VectorXd OperatorSuite::gamma(const FemFunction& v) const {
    Eigen::VectorXd out(num_sites());
    for (int k = 0; k < num_sites(); ++k) out[k] = v[site_index_[k]];
    return out;
}

DualVector OperatorSuite::gamma_adjoint(const Eigen::VectorXd& eta) const {
    DualVector out = DualVector::Zero(space_->dim());
    for (int k = 0; k < num_sites(); ++k) out[site_index_[k]] += site_weight_[k] * eta[k];
    return out;
}

double OperatorSuite::eta_dual_norm(const Eigen::VectorXd& eta) const {
    if (params_.problem == ProblemKind::P1) return std::abs(eta[0]);
    const double qq = q();
    double sum = 0.0;
    for (int k = 0; k < num_sites(); ++k) sum += site_weight_[k] * std::pow(std::abs(eta[k]), qq);
    return std::pow(sum, 1.0 / qq);
}

double OperatorSuite::gamma_value_norm(const FemFunction& v) const {
    return space_->norm_U(v, params_.problem == ProblemKind::P1 ? UNorm::Trace : UNorm::Domain);
}

GammaNormEstimate estimate_gamma_norm(const FemSpace& space, ProblemKind kind, double p) {
    const QuotientEstimate est = kind == ProblemKind::P1 ? trace_constant(space, p) : poincare_constant(space, p);
    GammaNormEstimate out;
    out.raw = std::pow(est.value, 1.0 / p);
    out.inflated = 1.05 * out.raw;
    out.verified = est.verified;
    return out;
}

ConstantsLedger compute_example_constants(const OperatorSuite& suite, double grid_ratio_bound) {
    const SuiteParams& sp = suite.params();
    const double p = sp.p;
    const double q = p / (p - 1.0);
    ConstantsLedger L;
    L.p = p;
    L.q = q;
    L.delta = sp.delta;
    L.alpha = sp.alpha;
    L.domain_measure = 1.0;
    L.boundary_measure = 1.0;

    const QuotientEstimate poincare = poincare_constant(suite.space(), p);
    L.poincare = poincare.value;
    L.poincare_verified = poincare.verified;

    L.c_g = sp.g.growth_constant();
    L.c_q = L.c_g;
    L.mu_A = sp.alpha;
    L.beta = 0.0;
    L.lambda = std::max(0.0, -sp.g.lower_bound_gs()) * L.domain_measure;
    L.c_A = std::max(L.c_q * std::pow(L.poincare, 1.0 / p) * std::pow(L.domain_measure, 1.0 / q),
                     sp.alpha + L.c_g * std::pow(L.poincare, 1.0 / (p * q)));
    L.beta_A = L.c_A;

    L.mu_B = 1.0;
    L.beta_B = 1.0;
    // sup |u| <= |u|_V on the unit interval with a clamped end
    L.beta_C = 1.0;
    const double delta = sp.delta;
    L.c_modulus = [delta, p](double r) { return (1.0 + delta) * std::pow(r, delta) * std::pow(2.0 * r, 1.0 / p); };

    L.c_j = sp.j.growth_constant();
    const double measure = sp.problem == ProblemKind::P1 ? L.boundary_measure : L.domain_measure;
    L.c_M = L.c_j * std::pow(2.0, 1.0 / p) * std::max(1.0, std::pow(measure, 1.0 / q));

    const GammaNormEstimate gn = estimate_gamma_norm(suite.space(), sp.problem, p);
    L.gamma_norm_raw = gn.raw;
    L.gamma_norm = gn.inflated;
    L.embedding_WV = 1.0;
    L.grid_ratio_bound = grid_ratio_bound;
    return L;
}

bool AuditReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
}

std::string AuditReport::to_text() const {
    io::KeyValueReport r;
    r.add("audit.passed", passed());
    r.add("smallness.holds", smallness_holds);
    r.add("smallness.slack", smallness_slack);
    for (const AuditCheck& c : checks) {
        r.add(c.name + ".passed", c.passed);
        r.add(c.name + ".samples", c.samples);
        r.add(c.name + ".min_slack", c.min_slack);
        if (!c.passed) r.add(c.name + ".witness", c.witness);
    }
    return r.str();
}

namespace {

class Sampler {
public:
    Sampler(const FemSpace& space, std::uint64_t seed) : space_(space), rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // smooth modes plus nodal noise, scaled so that |v|_W = 10^U(-2, 2)
    FemFunction function() {
        double a[4], ph[4];
        for (int k = 0; k < 4; ++k) {
            a[k] = uniform(-1.0, 1.0) / (k + 1);
            ph[k] = uniform(0.0, 2.0 * std::numbers::pi);
        }
        const double rough = uniform() < 0.5 ? 0.0 : uniform(0.0, 0.5);
        const double offset = uniform(-1.0, 1.0);
        Eigen::VectorXd nodal(space_.num_nodes());
        for (int i = 0; i < space_.num_nodes(); ++i) {
            const double x = space_.mesh_nodes()[i];
            double val = offset;
            for (int k = 0; k < 4; ++k) val += a[k] * std::sin((k + 1) * std::numbers::pi * x + ph[k]);
            val += rough * uniform(-1.0, 1.0);
            nodal[i] = val;
        }
        FemFunction v = space_.from_nodal(nodal);
        const double nw = space_.norm_W(v);
        if (!(nw > 0.0)) v = FemFunction::Ones(space_.dim()), v /= std::max(space_.norm_W(v), 1e-300);
        else v /= nw;
        return v * std::pow(10.0, uniform(-2.0, 2.0));
    }

    double scalar() {
        const double mag = std::pow(10.0, uniform(-3.0, 3.0));
        return uniform() < 0.5 ? -mag : mag;
    }

private:
    const FemSpace& space_;
    std::mt19937_64 rng_;
};

struct CheckBuilder {
    AuditCheck check;
    double tolerance;

    CheckBuilder(std::string name, double tol) : tolerance(tol) {
        check.name = std::move(name);
        check.min_slack = std::numeric_limits<double>::infinity();
    }

    // records lhs <= rhs with relative slack (rhs - lhs) / scale
    void le(double lhs, double rhs, const std::string& where) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        const double slack = (rhs - lhs) / scale;
        ++check.samples;
        if (slack < check.min_slack) {
            check.min_slack = slack;
            if (slack < -tolerance) {
                check.passed = false;
                check.witness = where + " lhs=" + io::format_double(lhs) + " rhs=" + io::format_double(rhs);
            }
        }
    }

    // records value >= 0 relative to `scale`
    void nonneg(double value, double scale, const std::string& where) {
        const double slack = value / std::max(scale, 1e-300);
        ++check.samples;
        if (slack < check.min_slack) {
            check.min_slack = slack;
            if (slack < -tolerance) {
                check.passed = false;
                check.witness = where + " value=" + io::format_double(value);
            }
        }
    }
};

}  // namespace

AuditReport audit_hypotheses(const OperatorSuite& suite, const ConstantsLedger& L, int samples,
                             std::uint64_t seed) {
    const FemSpace& space = suite.space();
    const SuiteParams& sp = suite.params();
    const double p = sp.p;
    const double q = p / (p - 1.0);
    Sampler draw(space, seed);
    constexpr double kTol = 1e-10;

    CheckBuilder growth("A.growth", kTol);
    CheckBuilder coercive("A.coercivity", kTol);
    CheckBuilder monotone("A.monotonicity", kTol);
    CheckBuilder g_growth("g.growth", kTol);
    CheckBuilder g_lower("g.lower_bound", kTol);
    CheckBuilder c_growth("C.growth", kTol);
    CheckBuilder c_modulus("C.modulus", kTol);
    CheckBuilder j_growth("j.growth", kTol);
    CheckBuilder m_growth("M.growth", kTol);

    for (int k = 0; k < samples; ++k) {
        const std::string where = "sample " + std::to_string(k);
        const FemFunction v = draw.function();
        const FemFunction w = draw.function();
        const double nv = space.norm_W(v);

        const DualVector Av = suite.apply_A(0.0, v);
        growth.le(space.dual_norm_W(Av), 1.05 * L.c_A * (1.0 + std::pow(nv, p - 1.0)), where);

        const double hv = space.norm_H(v);
        coercive.le(L.mu_A * std::pow(nv, p) - L.beta * hv * hv - L.lambda, Av.dot(v), where);

        const FemFunction d = v - w;
        const double pairing = (suite.apply_pLaplacian(v) - suite.apply_pLaplacian(w)).dot(d);
        monotone.nonneg(pairing, std::pow(nv, p) + std::pow(space.norm_W(w), p), where);

        const double s = draw.scalar();
        g_growth.le(std::abs(sp.g(s)), L.c_g * (1.0 + std::pow(std::abs(s), p - 1.0)), where);
        g_lower.le(sp.g.lower_bound_gs(), sp.g(s) * s, where);

        if (sp.include_B) {
            const double uv = space.norm_V(v);
            c_growth.le(space.dual_norm_W(suite.apply_C(v)), L.beta_C * (1.0 + std::pow(uv, 2.0 / q)), where);
            const double r = std::max(uv, space.norm_V(w));
            const double diff = space.dual_norm_W(suite.apply_C(v) - suite.apply_C(w));
            c_modulus.le(diff, L.c_modulus(r) * std::pow(space.norm_H(d), 1.0 / q), where);
        }

        for (double t : {s, s * 1e-3}) {
            const auto [lo, hi] = sp.j.subdiff_interval(t);
            const double bound = L.c_j * (1.0 + std::pow(std::abs(t), p - 1.0));
            j_growth.le(std::max(std::abs(lo), std::abs(hi)), bound, where);
        }

        // largest selection at every evaluation point of gamma w
        auto select = [&sp](double val) {
            const auto [lo, hi] = sp.j.subdiff_interval(val);
            return std::abs(lo) > std::abs(hi) ? lo : hi;
        };
        if (sp.problem == ProblemKind::P1) {
            const double trace = space.to_nodal(w)[*space.neumann_node()];
            m_growth.le(std::abs(select(trace)), L.c_M * (1.0 + std::pow(std::abs(trace), p - 1.0)), where);
        } else {
            const Eigen::VectorXd nodal = space.to_nodal(w);
            double eta_q = 0.0, w_p = 0.0;
            for (int e = 0; e < space.num_elements(); ++e) {
                for (int g = 0; g < Rule::size; ++g) {
                    const double xi = Rule::points[g];
                    const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
                    const double wt = Rule::weights[g] * space.h(e);
                    eta_q += wt * std::pow(std::abs(select(val)), q);
                    w_p += wt * std::pow(std::abs(val), p);
                }
            }
            const double lhs = std::pow(eta_q, 1.0 / q);
            const double wn = std::pow(w_p, 1.0 / p);
            m_growth.le(lhs, L.c_M * (1.0 + std::pow(wn, p - 1.0)), where);
        }
    }
    // breakpoints exactly
    for (double b : sp.j.breakpoints()) {
        const auto [lo, hi] = sp.j.subdiff_interval(b);
        j_growth.le(std::max(std::abs(lo), std::abs(hi)), L.c_j * (1.0 + std::pow(std::abs(b), p - 1.0)),
                    "breakpoint " + io::format_double(b));
    }

    AuditReport report;
    for (CheckBuilder* c : {&growth, &coercive, &monotone, &g_growth, &g_lower, &c_growth, &c_modulus, &j_growth,
                            &m_growth}) {
        if (c->check.samples == 0) c->check.min_slack = 0.0;
        report.checks.push_back(c->check);
    }
    report.smallness_slack = L.smallness_slack();
    report.smallness_holds = L.smallness_holds();
    return report;
}

}  // namespace rothe
