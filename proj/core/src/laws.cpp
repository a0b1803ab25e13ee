#include "rothe/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rothe/error.hpp"

namespace rothe {

ScalarLaw ScalarLaw::zero() { return ScalarLaw(Kind::Zero, "zero", 0.0, 2.0, 0.0, 0.0); }

ScalarLaw ScalarLaw::arctan() {
    return ScalarLaw(Kind::Arctan, "arctan", 1.0, 2.0, 0.5 * std::numbers::pi, 0.0);
}

ScalarLaw ScalarLaw::identity() { return ScalarLaw(Kind::Identity, "identity", 1.0, 2.0, 1.0, 0.0); }

ScalarLaw ScalarLaw::power(double c, double p) {
    if (!(c >= 0.0) || !(p >= 2.0)) throw ConfigError("power law needs c >= 0 and p >= 2");
    return ScalarLaw(Kind::Power, "power", c, p, c, 0.0);
}

double ScalarLaw::operator()(double s) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Arctan: return std::atan(s);
        case Kind::Identity: return s;
        case Kind::Power: return s == 0.0 ? 0.0 : c_ * std::pow(std::abs(s), p_ - 2.0) * s;
    }
    return 0.0;
}

double ScalarLaw::derivative(double s) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Arctan: return 1.0 / (1.0 + s * s);
        case Kind::Identity: return 1.0;
        case Kind::Power:
            if (p_ == 2.0) return c_;
            return s == 0.0 ? 0.0 : c_ * (p_ - 1.0) * std::pow(std::abs(s), p_ - 2.0);
    }
    return 0.0;
}

PotentialGraph::PotentialGraph(std::string name, std::vector<double> breakpoints, std::vector<Piece> pieces,
                               double growth_constant)
    : name_(std::move(name)), breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), c_j_(growth_constant) {
    if (pieces_.size() != breaks_.size() + 1) throw ConfigError("potential needs one more piece than breakpoints");
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > breaks_[i - 1])) throw ConfigError("potential breakpoints must increase");
    }
}

PotentialGraph PotentialGraph::zero() { return PotentialGraph("zero", {}, {{0.0, 0.0}}, 0.0); }

PotentialGraph PotentialGraph::quadratic() { return PotentialGraph("quadratic", {}, {{1.0, 0.0}}, 1.0); }

PotentialGraph PotentialGraph::abs() { return PotentialGraph("abs", {0.0}, {{0.0, -1.0}, {0.0, 1.0}}, 1.0); }

PotentialGraph PotentialGraph::jump() { return PotentialGraph("jump", {1.0}, {{1.0, 0.0}, {0.5, 0.0}}, 1.0); }

PotentialGraph PotentialGraph::double_well() {
    // rho(s) = s - sign(s); | |s| - 1 | <= 1 + |s|^{p-1}
    return PotentialGraph("double-well", {0.0}, {{1.0, 1.0}, {1.0, -1.0}}, 1.0);
}

PotentialGraph PotentialGraph::scaled(double k) const {
    if (!(k > 0.0)) throw ConfigError("potential scale must be positive");
    std::vector<Piece> p = pieces_;
    for (Piece& piece : p) {
        piece.slope *= k;
        piece.intercept *= k;
    }
    return PotentialGraph(name_, breaks_, std::move(p), k * c_j_);
}

int PotentialGraph::piece_index(double s) const {
    return static_cast<int>(std::upper_bound(breaks_.begin(), breaks_.end(), s) - breaks_.begin());
}

double PotentialGraph::left_limit(int b) const {
    const Piece& piece = pieces_[b];
    return piece.slope * breaks_[b] + piece.intercept;
}

double PotentialGraph::right_limit(int b) const {
    const Piece& piece = pieces_[b + 1];
    return piece.slope * breaks_[b] + piece.intercept;
}

double PotentialGraph::integral(double a, double b) const {
    double sum = 0.0;
    const int n = static_cast<int>(pieces_.size());
    for (int i = 0; i < n; ++i) {
        const double L = i == 0 ? -std::numeric_limits<double>::infinity() : breaks_[i - 1];
        const double R = i == n - 1 ? std::numeric_limits<double>::infinity() : breaks_[i];
        const double lo = std::max(a, L);
        const double hi = std::min(b, R);
        if (hi <= lo) continue;
        sum += (hi - lo) * (pieces_[i].slope * 0.5 * (lo + hi) + pieces_[i].intercept);
    }
    return sum;
}

double PotentialGraph::potential(double s) const {
    return s >= 0.0 ? integral(0.0, s) : -integral(s, 0.0);
}

double PotentialGraph::density(double s) const {
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), s);
    if (it != breaks_.end() && *it == s) {
        const int b = static_cast<int>(it - breaks_.begin());
        return 0.5 * (left_limit(b) + right_limit(b));
    }
    const Piece& piece = pieces_[piece_index(s)];
    return piece.slope * s + piece.intercept;
}

std::pair<double, double> PotentialGraph::subdiff_interval(double s) const {
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), s);
    if (it != breaks_.end() && *it == s) {
        const int b = static_cast<int>(it - breaks_.begin());
        const double l = left_limit(b);
        const double r = right_limit(b);
        return {std::min(l, r), std::max(l, r)};
    }
    const double v = density(s);
    return {v, v};
}

double PotentialGraph::regularized(double s, double eps) const {
    if (smooth()) return density(s);
    return integral(s - eps, s + eps) / (2.0 * eps);
}

double PotentialGraph::regularized_derivative(double s, double eps) const {
    if (smooth()) return pieces_[0].slope;
    return (density(s + eps) - density(s - eps)) / (2.0 * eps);
}

double PotentialGraph::graph_distance(double s, double eta) const {
    double best = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(pieces_.size());
    for (int i = 0; i < n; ++i) {
        const double L = i == 0 ? -std::numeric_limits<double>::infinity() : breaks_[i - 1];
        const double R = i == n - 1 ? std::numeric_limits<double>::infinity() : breaks_[i];
        const double m = pieces_[i].slope;
        const double c = pieces_[i].intercept;
        double x = (s + m * (eta - c)) / (1.0 + m * m);
        x = std::clamp(x, L, R);
        best = std::min(best, std::hypot(s - x, eta - (m * x + c)));
    }
    for (int b = 0; b < static_cast<int>(breaks_.size()); ++b) {
        const double l = left_limit(b);
        const double r = right_limit(b);
        const double y = std::clamp(eta, std::min(l, r), std::max(l, r));
        best = std::min(best, std::hypot(s - breaks_[b], eta - y));
    }
    return best;
}

double PotentialGraph::max_slope() const {
    double m = 0.0;
    for (const Piece& piece : pieces_) m = std::max(m, std::abs(piece.slope));
    return m;
}

double PotentialGraph::max_jump() const {
    double m = 0.0;
    for (int b = 0; b < static_cast<int>(breaks_.size()); ++b) m = std::max(m, std::abs(right_limit(b) - left_limit(b)));
    return m;
}

}  // namespace rothe
