#pragma once

// Second implementations used as test oracles. Nothing here calls into the
// library code it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rothe/laws.hpp"

namespace oracle {

struct GridParams {
    std::vector<double> t, tau_half, ratio, gamma;  // 1-based, slot 0 unused where meaningless
    double tau_max = 0, tau_min = 0, r_max = 1, r_min = 1, c_gamma = 0, sigma = 0;
};

// Straight transcription of the definitions for steps tau_1..tau_N.
inline GridParams grid_params(const std::vector<double>& steps) {
    const int N = static_cast<int>(steps.size());
    auto tau = [&](int n) { return steps[n - 1]; };
    GridParams g;
    g.t.assign(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) g.t[n] = g.t[n - 1] + tau(n);
    g.tau_half.assign(N, 0.0);
    for (int n = 1; n <= N - 1; ++n) g.tau_half[n] = 0.5 * (tau(n) + tau(n + 1));
    g.ratio.assign(N + 1, 0.0);
    for (int n = 2; n <= N; ++n) g.ratio[n] = tau(n) / tau(n - 1);
    g.gamma.assign(N + 1, 0.0);
    for (int n = 3; n <= N; ++n) g.gamma[n] = std::max(0.0, 1.0 / g.ratio[n] - 1.0 / g.ratio[n - 1]);
    g.tau_max = *std::max_element(steps.begin(), steps.end());
    g.tau_min = *std::min_element(steps.begin(), steps.end());
    g.r_max = *std::max_element(g.ratio.begin() + 2, g.ratio.end());
    g.r_min = *std::min_element(g.ratio.begin() + 2, g.ratio.end());
    for (int n = 3; n <= N; ++n) g.c_gamma = std::max(g.c_gamma, g.gamma[n] / tau(n));
    for (int j = 1; j <= N - 1; ++j) {
        const double d = tau(j + 1) - tau(j);
        g.sigma += 0.5 * d * d / (tau(j + 1) + tau(j));
    }
    return g;
}

// Dense P1 matrices on a uniform mesh of (0, 1), free nodes only.
struct DenseP1 {
    Eigen::MatrixXd K, M;
    std::vector<double> x;  // coordinates of the free nodes
};

// left/right: whether the end node is clamped
inline DenseP1 dense_p1(int elements, bool clamp_left, bool clamp_right) {
    const double h = 1.0 / elements;
    const int nodes = elements + 1;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nodes, nodes), M = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int e = 0; e < elements; ++e) {
        const int a = e, b = e + 1;
        K(a, a) += 1 / h; K(b, b) += 1 / h; K(a, b) -= 1 / h; K(b, a) -= 1 / h;
        M(a, a) += h / 3; M(b, b) += h / 3; M(a, b) += h / 6; M(b, a) += h / 6;
    }
    std::vector<int> keep;
    for (int i = 0; i < nodes; ++i)
        if (!((i == 0 && clamp_left) || (i == nodes - 1 && clamp_right))) keep.push_back(i);
    DenseP1 d;
    const int n = static_cast<int>(keep.size());
    d.K.resize(n, n);
    d.M.resize(n, n);
    for (int i = 0; i < n; ++i) {
        d.x.push_back(keep[i] * h);
        for (int j = 0; j < n; ++j) {
            d.K(i, j) = K(keep[i], keep[j]);
            d.M(i, j) = M(keep[i], keep[j]);
        }
    }
    return d;
}

// Best constant in |v|_H^2 <= c |v'|^2: reciprocal of the smallest generalized eigenvalue.
inline double dense_poincare_p2(const DenseP1& d) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(d.K, d.M);
    return 1.0 / es.eigenvalues().minCoeff();
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Smallest interval containing the subdifferential over [s - r, s + r].
// Densities are piecewise linear, so the window ends and the kinks suffice.
inline std::pair<double, double> subdiff_hull(const rothe::PotentialGraph& j, double s, double r) {
    auto [lo, hi] = j.subdiff_interval(s - r);
    auto widen = [&](double x) {
        const auto [a, b] = j.subdiff_interval(x);
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    };
    widen(s);
    widen(s + r);
    for (double b : j.breakpoints())
        if (b >= s - r && b <= s + r) widen(b);
    return {lo, hi};
}

}  // namespace oracle
