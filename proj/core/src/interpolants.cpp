#include "rothe/interpolants.hpp"

#include <algorithm>
#include <cmath>

#include "rothe/io.hpp"

namespace rothe {

Interpolant::Interpolant(Kind kind, std::vector<double> breaks, std::vector<Eigen::VectorXd> values)
    : kind_(kind), breaks_(std::move(breaks)), values_(std::move(values)) {
    if (breaks_.size() < 2) throw ConfigError("interpolant needs at least one interval");
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > breaks_[i - 1])) throw ConfigError("interpolant breakpoints must increase strictly");
    }
    const std::size_t expected = kind_ == Kind::PiecewiseConstant ? breaks_.size() - 1 : breaks_.size();
    if (values_.size() != expected) throw ConfigError("interpolant value count does not match its kind");
}

Interpolant Interpolant::piecewise_constant(std::vector<double> breaks, std::vector<Eigen::VectorXd> values) {
    return Interpolant(Kind::PiecewiseConstant, std::move(breaks), std::move(values));
}

Interpolant Interpolant::piecewise_linear(std::vector<double> breaks, std::vector<Eigen::VectorXd> values) {
    return Interpolant(Kind::PiecewiseLinear, std::move(breaks), std::move(values));
}

Interpolant Interpolant::combine(double a, const Interpolant& x, double b, const Interpolant& y) {
    if (x.kind_ != y.kind_ || x.breaks_ != y.breaks_) throw ConfigError("combine needs identical partitions");
    std::vector<Eigen::VectorXd> vals(x.values_.size());
    for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = a * x.values_[k] + b * y.values_[k];
    return Interpolant(x.kind_, x.breaks_, std::move(vals));
}

int Interpolant::interval_of(double t) const {
    const int k = static_cast<int>(std::lower_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin()) - 1;
    return std::clamp(k, 0, num_intervals() - 1);
}

Eigen::VectorXd Interpolant::linear_at(int k, double t) const {
    const double s = std::clamp((t - breaks_[k]) / (breaks_[k + 1] - breaks_[k]), 0.0, 1.0);
    if (s == 0.0) return values_[k];
    if (s == 1.0) return values_[k + 1];
    return (1.0 - s) * values_[k] + s * values_[k + 1];
}

Eigen::VectorXd Interpolant::operator()(double t) const {
    const int k = interval_of(t);
    return kind_ == Kind::PiecewiseConstant ? values_[k] : linear_at(k, t);
}

Eigen::VectorXd Interpolant::limit_right(double t) const {
    int k = static_cast<int>(std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin()) - 1;
    k = std::clamp(k, 0, num_intervals() - 1);
    return kind_ == Kind::PiecewiseConstant ? values_[k] : linear_at(k, t);
}

Eigen::VectorXd Interpolant::limit_left(double t) const { return (*this)(t); }

Eigen::VectorXd Interpolant::derivative(double t) const {
    if (kind_ == Kind::PiecewiseConstant) return Eigen::VectorXd::Zero(values_.front().size());
    const int k = interval_of(t);
    return (values_[k + 1] - values_[k]) / (breaks_[k + 1] - breaks_[k]);
}

InterpolantSet make_interpolants(const Trajectory& traj) {
    if (!traj.complete()) throw ConfigError("interpolants need a complete trajectory");
    const TimeGrid& grid = traj.grid;
    const int N = grid.N();
    std::vector<double> breaks;
    breaks.reserve(N + 2);
    breaks.push_back(0.0);
    for (int n = 0; n <= N - 1; ++n) breaks.push_back(grid.t_half(n));
    breaks.push_back(grid.T());

    const Eigen::Index dim = traj.u[0].size();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);

    std::vector<Eigen::VectorXd> u, v, vh, eta, f;
    u.push_back(zero);
    v.push_back(traj.v[0]);
    vh.push_back(traj.v[0]);
    vh.push_back(traj.v[0]);
    eta.push_back(traj.eta_padded(0));
    f.push_back(zero);
    for (int n = 1; n <= N - 1; ++n) {
        u.push_back(traj.u[n]);
        v.push_back(traj.v[n]);
        vh.push_back(traj.v[n]);
        eta.push_back(traj.eta[n]);
        f.push_back(traj.f[n]);
    }
    u.push_back(zero);
    v.push_back(traj.v_padded(N));
    vh.push_back(traj.v_padded(N));
    eta.push_back(traj.eta_padded(N));
    f.push_back(zero);

    return InterpolantSet{
        Interpolant::piecewise_constant(breaks, std::move(u)),
        Interpolant::piecewise_constant(breaks, std::move(v)),
        Interpolant::piecewise_linear(breaks, std::move(vh)),
        Interpolant::piecewise_constant(breaks, std::move(eta)),
        Interpolant::piecewise_constant(breaks, std::move(f)),
    };
}

Eigen::VectorXd apply_K(const Interpolant& w, double t) {
    if (w.kind() != Interpolant::Kind::PiecewiseConstant) throw ConfigError("K is applied to piecewise-constant functions");
    const auto& b = w.breakpoints();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(w.values().front().size());
    for (int k = 0; k < w.num_intervals(); ++k) {
        const double hi = std::min(b[k + 1], t);
        if (hi <= b[k]) break;
        out += (hi - b[k]) * w.values()[k];
    }
    return out;
}

Interpolant antiderivative(const Interpolant& w, const Eigen::VectorXd& start) {
    if (w.kind() != Interpolant::Kind::PiecewiseConstant) throw ConfigError("K is applied to piecewise-constant functions");
    const auto& b = w.breakpoints();
    std::vector<Eigen::VectorXd> vals;
    vals.reserve(b.size());
    vals.push_back(start);
    for (int k = 0; k < w.num_intervals(); ++k) vals.push_back(vals.back() + (b[k + 1] - b[k]) * w.values()[k]);
    return Interpolant::piecewise_linear(b, std::move(vals));
}

namespace {

struct Piece {
    double lo, hi, value;
};

std::vector<Piece> bochner_pieces(const Interpolant& a, const Interpolant* b, const SparseMatrix& gram) {
    std::vector<double> knots = a.breakpoints();
    if (b) {
        if (std::abs(a.start() - b->start()) > 1e-12 * std::max(1.0, std::abs(a.end())) ||
            std::abs(a.end() - b->end()) > 1e-12 * std::max(1.0, std::abs(a.end()))) {
            throw ConfigError("interpolants live on different time intervals");
        }
        std::vector<double> merged;
        merged.reserve(knots.size() + b->breakpoints().size());
        std::merge(knots.begin(), knots.end(), b->breakpoints().begin(), b->breakpoints().end(),
                   std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        // the two end points agree up to rounding; keep those of a
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [&](double t) { return t < a.start() || t > a.end(); }),
                     merged.end());
        merged.front() = a.start();
        merged.back() = a.end();
        knots = std::move(merged);
    }
    auto diff = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return b ? Eigen::VectorXd(x - y) : x; };
    auto sq = [&](const Eigen::VectorXd& x) { return x.dot(gram * x); };
    std::vector<Piece> out;
    out.reserve(knots.size());
    const Eigen::VectorXd zero;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double s0 = knots[k];
        const double s1 = knots[k + 1];
        if (!(s1 > s0)) continue;
        const double sm = 0.5 * (s0 + s1);
        const Eigen::VectorXd d0 = diff(a.limit_right(s0), b ? b->limit_right(s0) : zero);
        const Eigen::VectorXd dm = diff(a(sm), b ? (*b)(sm) : zero);
        const Eigen::VectorXd d1 = diff(a.limit_left(s1), b ? b->limit_left(s1) : zero);
        out.push_back({s0, s1, (s1 - s0) / 6.0 * (sq(d0) + 4.0 * sq(dm) + sq(d1))});
    }
    return out;
}

double sum_pieces(const std::vector<Piece>& pieces) {
    double s = 0.0;
    for (const Piece& p : pieces) s += p.value;
    return s;
}

}  // namespace

double bochner_l2_squared(const Interpolant& a, const Interpolant& b, const SparseMatrix& gram) {
    return sum_pieces(bochner_pieces(a, &b, gram));
}

double bochner_l2_squared(const Interpolant& a, const SparseMatrix& gram) {
    return sum_pieces(bochner_pieces(a, nullptr, gram));
}

AveragingIdentityReport averaging_identity(const Trajectory& traj) {
    const InterpolantSet in = make_interpolants(traj);
    const SparseMatrix& mass = traj.suite->space().mass();
    const TimeGrid& grid = traj.grid;
    AveragingIdentityReport r;
    r.lhs = bochner_l2_squared(in.v_hat, in.v, mass);
    double jumps = 0.0;
    double weighted = 0.0;
    for (int j = 1; j <= grid.N() - 1; ++j) {
        const Eigen::VectorXd d = traj.v[j] - traj.v[j - 1];
        const double h2 = d.dot(mass * d);
        jumps += h2;
        weighted += grid.tau_half(j) * h2;
    }
    r.rhs = weighted / 3.0;
    r.bound = grid.tau_max() / 3.0 * jumps;
    const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_diff = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
    r.equal = r.rel_diff <= 1e-12;
    r.bound_holds = r.lhs <= r.bound * (1.0 + 1e-12);
    return r;
}

std::string AprioriReport::to_text() const {
    io::KeyValueReport kv;
    kv.add("energy.u_last_V2", u_last_V2)
        .add("energy.v_last_H2", v_last_H2)
        .add("energy.jumps_H2", jumps_H2)
        .add("energy.v_W_p", v_W_p)
        .add("energy.eta_q", eta_q)
        .add("energy.lhs", lhs)
        .add("energy.rhs", rhs)
        .add("energy.ratio", ratio)
        .add("increment.sum", increment_sum);
    return kv.str();
}

AprioriReport apriori_report(const Trajectory& traj) {
    if (!traj.complete()) throw ConfigError("a priori report needs a complete trajectory");
    const OperatorSuite& suite = *traj.suite;
    const FemSpace& space = suite.space();
    const TimeGrid& grid = traj.grid;
    const int N = grid.N();
    const double p = suite.p();
    const double q = suite.q();
    const SparseMatrix& mass = space.mass();

    AprioriReport r;
    const double uN = space.norm_V(traj.u[N]);
    r.u_last_V2 = uN * uN;
    const double vl = space.norm_H(traj.v[N - 1]);
    r.v_last_H2 = vl * vl;
    for (int j = 1; j <= N - 1; ++j) {
        const double th = grid.tau_half(j);
        const Eigen::VectorXd d = traj.v[j] - traj.v[j - 1];
        r.jumps_H2 += d.dot(mass * d);
        r.v_W_p += th * std::pow(space.norm_W(traj.v[j]), p);
        r.eta_q += th * std::pow(suite.eta_dual_norm(traj.eta[j]), q);
        r.increment_sum += th * std::pow(space.dual_norm_surrogate(mass * d / th), q);
    }
    r.lhs = r.u_last_V2 + r.v_last_H2 + r.jumps_H2 + r.v_W_p + r.eta_q;

    const double tau1 = grid.tau(1);
    const double v0H = space.norm_H(traj.v[0]);
    r.rhs = 1.0 + space.norm_V(traj.u[0]) + v0H * v0H + tau1 * tau1 * space.norm_V(traj.v[0]);
    for (int j = 1; j <= N - 1; ++j) r.rhs += grid.tau_half(j) * std::pow(space.dual_norm_surrogate(traj.f[j]), q);
    r.ratio = r.lhs / r.rhs;
    return r;
}

BvqReport bvq_diagnostics(const Trajectory& traj) {
    if (!traj.complete()) throw ConfigError("BV diagnostics need a complete trajectory");
    const FemSpace& space = traj.suite->space();
    BvqReport r;
    r.q = traj.suite->q();
    r.N = traj.N();
    for (int k = 1; k <= r.N; ++k) {
        const Eigen::VectorXd d = traj.v_padded(k) - traj.v_padded(k - 1);
        r.jump_sum += std::pow(space.dual_norm_surrogate(space.mass() * d), r.q);
    }
    r.power_bound = std::pow(static_cast<double>(r.N), r.q - 1.0) * r.jump_sum;
    return r;
}

RecoveryReport recovery_defect(const Trajectory& traj) {
    const InterpolantSet in = make_interpolants(traj);
    const Interpolant recovered = antiderivative(in.v, traj.u[0]);
    // same partition on both sides, so pieces align with the half grid
    const std::vector<Piece> pieces = bochner_pieces(recovered, &in.u, traj.suite->space().stiffness());
    RecoveryReport r;
    double interior = 0.0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (k == 0) r.first_interval = pieces[k].value;
        else if (k + 1 == pieces.size()) r.last_interval = pieces[k].value;
        else interior += pieces[k].value;
    }
    r.total = std::sqrt(r.first_interval + r.last_interval + interior);
    r.interior = std::sqrt(interior);
    r.first_interval = std::sqrt(r.first_interval);
    r.last_interval = std::sqrt(r.last_interval);
    return r;
}

}  // namespace rothe
