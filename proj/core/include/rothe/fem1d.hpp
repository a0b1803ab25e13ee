#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>

namespace rothe {

// Coefficients of a P1 function on the free (non-Dirichlet) nodes.
using FemFunction = Eigen::VectorXd;
// Pairings <F, phi_i> of a functional against the free basis functions.
using DualVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// Which endpoints of (0,1) carry the homogeneous Dirichlet condition.
// Left:  Gamma_1 = {0}, Gamma_2 = {1}
// Right: Gamma_1 = {1}, Gamma_2 = {0}
// Both:  W_0^{1,p}(0,1)
enum class Dirichlet { Left, Right, Both };

enum class UNorm { Trace, Domain };

// P1 finite elements on the unit interval with the W, V, H and U norms.
// Immutable after construction; all members are reentrant.
class FemSpace {
public:
    FemSpace(std::vector<double> mesh_nodes, Dirichlet dirichlet, double p);
    static FemSpace uniform(int elements, Dirichlet dirichlet, double p);

    int num_elements() const { return static_cast<int>(h_.size()); }
    int num_nodes() const { return static_cast<int>(x_.size()); }
    int dim() const { return static_cast<int>(free_nodes_.size()); }
    double p() const { return p_; }
    double q() const { return p_ / (p_ - 1.0); }
    Dirichlet dirichlet() const { return dirichlet_; }

    std::span<const double> mesh_nodes() const { return x_; }
    double x(int node) const { return x_[node]; }
    std::span<const double> element_sizes() const { return h_; }
    double h(int e) const { return h_[e]; }

    bool is_dirichlet(int node) const { return free_index_[node] < 0; }
    // -1 for Dirichlet nodes
    int free_index(int node) const { return free_index_[node]; }
    int node_of(int free) const { return free_nodes_[free]; }
    // Free endpoint carrying the boundary term; empty for Dirichlet::Both.
    std::optional<int> neumann_node() const;

    Eigen::VectorXd to_nodal(const FemFunction& v) const;
    FemFunction from_nodal(const Eigen::VectorXd& nodal) const;
    FemFunction interpolate(const std::function<double(double)>& f) const;
    double value_at(const FemFunction& v, double x) const;
    // Per-element constant derivative of v.
    Eigen::VectorXd slopes(const FemFunction& v) const;

    const SparseMatrix& stiffness() const { return stiffness_; }
    const SparseMatrix& mass() const { return mass_; }
    const Eigen::VectorXd& lumped_mass() const { return lumped_mass_; }
    // z with K z = r on the free nodes.
    Eigen::VectorXd solve_stiffness(const DualVector& r) const;

    // <f, phi_i> with 5-point Gauss per element.
    DualVector load_vector(const std::function<double(double)>& density) const;

    // (int |v'|^p)^{1/p}, exact per element
    double norm_W(const FemFunction& v) const;
    // (int |v'|^2)^{1/2}
    double norm_V(const FemFunction& v) const;
    // L^2 norm through the consistent mass matrix
    double norm_H(const FemFunction& v) const;
    // Domain: (int |v|^p)^{1/p} by 3-point Gauss. Trace: |v| at Gamma_2.
    double norm_U(const FemFunction& v, UNorm which) const;

    // H^1-dual Riesz norm sqrt(r^T K^{-1} r). Equals the W* norm only for p = 2.
    double dual_norm_surrogate(const DualVector& r) const;
    // Exact dual norm of W = W^{1,p} with the gradient norm. In 1-D the
    // supremum reduces to a weighted l^q norm of tail sums of r, with one
    // scalar minimisation when both ends are clamped.
    double dual_norm_W(const DualVector& r) const;

private:
    std::vector<double> x_;
    std::vector<double> h_;
    Dirichlet dirichlet_;
    double p_;
    std::vector<int> free_index_;
    std::vector<int> free_nodes_;
    SparseMatrix stiffness_;
    SparseMatrix mass_;
    Eigen::VectorXd lumped_mass_;
    std::shared_ptr<const Eigen::SimplicialLDLT<SparseMatrix>> stiffness_solver_;
};

// Outcome of maximising a homogeneous quotient over the FEM space.
struct QuotientEstimate {
    double value = 0.0;
    bool verified = false;   // converged to tolerance within the budget
    int iterations = 0;
    FemFunction maximizer;
};

struct QuotientOptions {
    int max_iterations = 500;
    double tolerance = 1e-10;  // relative change of the quotient
};

// Best constant c in int |v|^p <= c int |v'|^p over the space.
QuotientEstimate poincare_constant(const FemSpace& space, double p, const QuotientOptions& opts = {});
// Best constant c in |v(Gamma_2)|^p <= c int |v'|^p (Dirichlet::Left/Right only).
QuotientEstimate trace_constant(const FemSpace& space, double p, const QuotientOptions& opts = {});

}  // namespace rothe
