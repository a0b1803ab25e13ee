#include "rothe/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rothe/error.hpp"
#include "rothe/quadrature.hpp"

namespace rothe {

namespace {

double signed_pow(double x, double e) {
    return x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), e), x);
}

}  // namespace

FemSpace::FemSpace(std::vector<double> mesh_nodes, Dirichlet dirichlet, double p)
    : x_(std::move(mesh_nodes)), dirichlet_(dirichlet), p_(p) {
    if (x_.size() < 2) throw ConfigError("mesh needs at least one element");
    if (!(p_ >= 2.0) || !std::isfinite(p_)) throw ConfigError("exponent p must satisfy p >= 2");
    if (std::abs(x_.front()) > 1e-14 || std::abs(x_.back() - 1.0) > 1e-12) {
        throw ConfigError("mesh must span [0, 1]");
    }
    x_.front() = 0.0;
    x_.back() = 1.0;
    const int M = static_cast<int>(x_.size()) - 1;
    h_.resize(M);
    for (int e = 0; e < M; ++e) {
        h_[e] = x_[e + 1] - x_[e];
        if (!(h_[e] > 0.0)) throw ConfigError("mesh nodes must be strictly increasing");
    }

    free_index_.assign(M + 1, -1);
    const bool left = dirichlet_ == Dirichlet::Left || dirichlet_ == Dirichlet::Both;
    const bool right = dirichlet_ == Dirichlet::Right || dirichlet_ == Dirichlet::Both;
    for (int i = 0; i <= M; ++i) {
        if ((i == 0 && left) || (i == M && right)) continue;
        free_index_[i] = static_cast<int>(free_nodes_.size());
        free_nodes_.push_back(i);
    }
    if (free_nodes_.empty()) throw ConfigError("mesh has no free nodes");

    const int n = dim();
    std::vector<Eigen::Triplet<double>> kt;
    std::vector<Eigen::Triplet<double>> mt;
    lumped_mass_ = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < M; ++e) {
        const int a = free_index_[e];
        const int b = free_index_[e + 1];
        const double k = 1.0 / h_[e];
        const double md = h_[e] / 3.0;
        const double mo = h_[e] / 6.0;
        if (a >= 0) {
            kt.emplace_back(a, a, k);
            mt.emplace_back(a, a, md);
            lumped_mass_[a] += 0.5 * h_[e];
        }
        if (b >= 0) {
            kt.emplace_back(b, b, k);
            mt.emplace_back(b, b, md);
            lumped_mass_[b] += 0.5 * h_[e];
        }
        if (a >= 0 && b >= 0) {
            kt.emplace_back(a, b, -k);
            kt.emplace_back(b, a, -k);
            mt.emplace_back(a, b, mo);
            mt.emplace_back(b, a, mo);
        }
    }
    stiffness_.resize(n, n);
    stiffness_.setFromTriplets(kt.begin(), kt.end());
    mass_.resize(n, n);
    mass_.setFromTriplets(mt.begin(), mt.end());

    auto solver = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>(stiffness_);
    if (solver->info() != Eigen::Success) throw ConfigError("stiffness matrix is singular");
    stiffness_solver_ = std::move(solver);
}

FemSpace FemSpace::uniform(int elements, Dirichlet dirichlet, double p) {
    if (elements < 1) throw ConfigError("mesh needs M >= 1 elements");
    std::vector<double> x(elements + 1);
    for (int i = 0; i <= elements; ++i) x[i] = static_cast<double>(i) / elements;
    return FemSpace(std::move(x), dirichlet, p);
}

std::optional<int> FemSpace::neumann_node() const {
    switch (dirichlet_) {
        case Dirichlet::Left: return num_nodes() - 1;
        case Dirichlet::Right: return 0;
        case Dirichlet::Both: return std::nullopt;
    }
    return std::nullopt;
}

Eigen::VectorXd FemSpace::to_nodal(const FemFunction& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(num_nodes());
    for (int i = 0; i < dim(); ++i) out[free_nodes_[i]] = v[i];
    return out;
}

FemFunction FemSpace::from_nodal(const Eigen::VectorXd& nodal) const {
    FemFunction out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = nodal[free_nodes_[i]];
    return out;
}

FemFunction FemSpace::interpolate(const std::function<double(double)>& f) const {
    FemFunction out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = f(x_[free_nodes_[i]]);
    return out;
}

double FemSpace::value_at(const FemFunction& v, double x) const {
    const Eigen::VectorXd nodal = to_nodal(v);
    if (x <= 0.0) return nodal[0];
    if (x >= 1.0) return nodal[num_nodes() - 1];
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const int e = static_cast<int>(it - x_.begin()) - 1;
    const double xi = (x - x_[e]) / h_[e];
    return (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
}

Eigen::VectorXd FemSpace::slopes(const FemFunction& v) const {
    const Eigen::VectorXd nodal = to_nodal(v);
    Eigen::VectorXd s(num_elements());
    for (int e = 0; e < num_elements(); ++e) s[e] = (nodal[e + 1] - nodal[e]) / h_[e];
    return s;
}

Eigen::VectorXd FemSpace::solve_stiffness(const DualVector& r) const {
    return stiffness_solver_->solve(r);
}

DualVector FemSpace::load_vector(const std::function<double(double)>& density) const {
    using R = quad::Rule5;
    Eigen::VectorXd nodal = Eigen::VectorXd::Zero(num_nodes());
    for (int e = 0; e < num_elements(); ++e) {
        for (int g = 0; g < R::size; ++g) {
            const double xi = R::points[g];
            const double w = R::weights[g] * h_[e] * density(x_[e] + xi * h_[e]);
            nodal[e] += w * (1.0 - xi);
            nodal[e + 1] += w * xi;
        }
    }
    return from_nodal(nodal);
}

double FemSpace::norm_W(const FemFunction& v) const {
    const Eigen::VectorXd s = slopes(v);
    double sum = 0.0;
    for (int e = 0; e < num_elements(); ++e) sum += h_[e] * std::pow(std::abs(s[e]), p_);
    return std::pow(sum, 1.0 / p_);
}

double FemSpace::norm_V(const FemFunction& v) const {
    return std::sqrt(std::max(0.0, v.dot(stiffness_ * v)));
}

double FemSpace::norm_H(const FemFunction& v) const {
    return std::sqrt(std::max(0.0, v.dot(mass_ * v)));
}

double FemSpace::norm_U(const FemFunction& v, UNorm which) const {
    if (which == UNorm::Trace) {
        const auto node = neumann_node();
        if (!node) return 0.0;  // trace vanishes on W_0^{1,p}
        return std::abs(v[free_index_[*node]]);
    }
    using R = quad::Rule3;
    const Eigen::VectorXd nodal = to_nodal(v);
    double sum = 0.0;
    for (int e = 0; e < num_elements(); ++e) {
        for (int g = 0; g < R::size; ++g) {
            const double xi = R::points[g];
            const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
            sum += R::weights[g] * h_[e] * std::pow(std::abs(val), p_);
        }
    }
    return std::pow(sum, 1.0 / p_);
}

double FemSpace::dual_norm_surrogate(const DualVector& r) const {
    if (r.size() == 0) return 0.0;
    const Eigen::VectorXd z = solve_stiffness(r);
    return std::sqrt(std::max(0.0, r.dot(z)));
}

double FemSpace::dual_norm_W(const DualVector& r) const {
    const int M = num_elements();
    const double qq = q();
    const Eigen::VectorXd R = to_nodal(r);
    // <r, w> = sum_e h_e w'_e S_e for the element sums S_e below
    std::vector<double> S(M, 0.0);
    if (dirichlet_ == Dirichlet::Right) {
        double acc = 0.0;
        for (int e = 0; e < M; ++e) {
            acc += R[e];
            S[e] = -acc;
        }
    } else {
        double acc = 0.0;
        for (int e = M - 1; e >= 0; --e) {
            acc += R[e + 1];
            S[e] = acc;
        }
    }
    auto lq = [&](double c) {
        double sum = 0.0;
        for (int e = 0; e < M; ++e) sum += h_[e] * std::pow(std::abs(S[e] - c), qq);
        return std::pow(sum, 1.0 / qq);
    };
    if (dirichlet_ != Dirichlet::Both) return lq(0.0);

    // zero-mean derivative constraint: minimise over the shift c; the
    // optimality condition psi(c) = 0 is monotone in c
    auto psi = [&](double c) {
        double sum = 0.0;
        for (int e = 0; e < M; ++e) sum += h_[e] * signed_pow(S[e] - c, qq - 1.0);
        return sum;
    };
    double lo = *std::min_element(S.begin(), S.end());
    double hi = *std::max_element(S.begin(), S.end());
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (psi(mid) > 0.0) lo = mid; else hi = mid;
    }
    return lq(0.5 * (lo + hi));
}

namespace {

// Functional N(v) together with its gradient.
struct Functional {
    std::function<double(const FemFunction&)> value;
    std::function<Eigen::VectorXd(const FemFunction&)> gradient;
};

Functional gradient_power(const FemSpace& space, double p) {
    Functional f;
    f.value = [&space, p](const FemFunction& v) {
        const Eigen::VectorXd s = space.slopes(v);
        double sum = 0.0;
        for (int e = 0; e < space.num_elements(); ++e) sum += space.h(e) * std::pow(std::abs(s[e]), p);
        return sum;
    };
    f.gradient = [&space, p](const FemFunction& v) {
        const Eigen::VectorXd s = space.slopes(v);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(space.num_nodes());
        for (int e = 0; e < space.num_elements(); ++e) {
            const double d = p * signed_pow(s[e], p - 1.0);
            g[e] -= d;
            g[e + 1] += d;
        }
        return Eigen::VectorXd(space.from_nodal(g));
    };
    return f;
}

Functional domain_power(const FemSpace& space, double p) {
    using R = quad::Rule3;
    Functional f;
    f.value = [&space, p](const FemFunction& v) {
        const Eigen::VectorXd nodal = space.to_nodal(v);
        double sum = 0.0;
        for (int e = 0; e < space.num_elements(); ++e) {
            for (int g = 0; g < R::size; ++g) {
                const double xi = R::points[g];
                const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
                sum += R::weights[g] * space.h(e) * std::pow(std::abs(val), p);
            }
        }
        return sum;
    };
    f.gradient = [&space, p](const FemFunction& v) {
        const Eigen::VectorXd nodal = space.to_nodal(v);
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(space.num_nodes());
        for (int e = 0; e < space.num_elements(); ++e) {
            for (int g = 0; g < R::size; ++g) {
                const double xi = R::points[g];
                const double val = (1.0 - xi) * nodal[e] + xi * nodal[e + 1];
                const double d = R::weights[g] * space.h(e) * p * signed_pow(val, p - 1.0);
                grad[e] += d * (1.0 - xi);
                grad[e + 1] += d * xi;
            }
        }
        return Eigen::VectorXd(space.from_nodal(grad));
    };
    return f;
}

Functional trace_power(const FemSpace& space, double p) {
    const int idx = space.free_index(*space.neumann_node());
    Functional f;
    f.value = [idx, p](const FemFunction& v) { return std::pow(std::abs(v[idx]), p); };
    f.gradient = [idx, p, n = space.dim()](const FemFunction& v) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        g[idx] = p * signed_pow(v[idx], p - 1.0);
        return g;
    };
    return f;
}

// Maximise N(v)/D(v) (both p-homogeneous). Each iteration takes the Riesz
// representative of grad log(N/D), orthonormalises it against v in the
// stiffness inner product and searches the plane span{v, d} by a coarse scan
// refined with golden-section search.
QuotientEstimate maximise_quotient(const FemSpace& space, const Functional& num, const Functional& den,
                                   FemFunction v, const QuotientOptions& opts) {
    const SparseMatrix& K = space.stiffness();
    auto normalise = [&](FemFunction& w) {
        const double nv = std::sqrt(w.dot(K * w));
        if (nv > 0.0) w /= nv;
    };
    auto quotient = [&](const FemFunction& w) {
        const double d = den.value(w);
        return d > 0.0 ? num.value(w) / d : 0.0;
    };

    normalise(v);
    QuotientEstimate out;
    double Q = quotient(v);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        out.iterations = it;
        const double Nv = num.value(v);
        const double Dv = den.value(v);
        const Eigen::VectorXd grad = num.gradient(v) / Nv - den.gradient(v) / Dv;
        FemFunction d = space.solve_stiffness(grad);
        d -= d.dot(K * v) * v;
        const double nd = std::sqrt(std::max(0.0, d.dot(K * d)));
        if (!(nd > 1e-300)) {
            out.verified = true;
            break;
        }
        d /= nd;

        auto along = [&](double theta) { return quotient(std::cos(theta) * v + std::sin(theta) * d); };
        constexpr int kScan = 33;
        const double half_pi = 0.5 * std::numbers::pi;
        double best_theta = 0.0;
        double best = Q;
        int best_k = kScan / 2;
        for (int k = 0; k < kScan; ++k) {
            const double theta = -half_pi + std::numbers::pi * k / (kScan - 1);
            const double val = along(theta);
            if (val > best) {
                best = val;
                best_theta = theta;
                best_k = k;
            }
        }
        const double step = std::numbers::pi / (kScan - 1);
        double a = -half_pi + step * (best_k - 1);
        double b = -half_pi + step * (best_k + 1);
        if (best_theta == 0.0) {
            a = -step;
            b = step;
        }
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = b - phi * (b - a);
        double c2 = a + phi * (b - a);
        double f1 = along(c1);
        double f2 = along(c2);
        for (int g = 0; g < 80 && b - a > 1e-14; ++g) {
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + phi * (b - a);
                f2 = along(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - phi * (b - a);
                f1 = along(c1);
            }
        }
        const double theta_g = f1 > f2 ? c1 : c2;
        const double val_g = std::max(f1, f2);
        if (val_g > best) {
            best = val_g;
            best_theta = theta_g;
        }

        FemFunction next = std::cos(best_theta) * v + std::sin(best_theta) * d;
        normalise(next);
        const double Qn = quotient(next);
        const double change = std::abs(Qn - Q) / std::max(std::abs(Qn), 1e-300);
        if (Qn >= Q) {
            v = std::move(next);
            Q = Qn;
        }
        if (change <= opts.tolerance) {
            out.verified = true;
            break;
        }
    }
    out.value = Q;
    out.maximizer = std::move(v);
    return out;
}

FemFunction initial_profile(const FemSpace& space) {
    // torsion function: positive, matches the boundary split
    FemFunction v = space.solve_stiffness(space.lumped_mass());
    return v;
}

}  // namespace

QuotientEstimate poincare_constant(const FemSpace& space, double p, const QuotientOptions& opts) {
    return maximise_quotient(space, domain_power(space, p), gradient_power(space, p), initial_profile(space), opts);
}

QuotientEstimate trace_constant(const FemSpace& space, double p, const QuotientOptions& opts) {
    if (!space.neumann_node()) throw ConfigError("trace constant needs a free boundary endpoint");
    return maximise_quotient(space, trace_power(space, p), gradient_power(space, p), initial_profile(space), opts);
}

}  // namespace rothe
