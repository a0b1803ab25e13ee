#include "rothe/report.hpp"

#include <sstream>

#include "rothe/io.hpp"

namespace rothe {

using io::CsvWriter;
using io::format_double;

std::string trajectory_csv(const Trajectory& traj) {
    const FemSpace& space = traj.suite->space();
    CsvWriter w({"n", "t_n", "v_H", "v_W", "u_V", "step_iterations", "step_residual", "graph_distance"});
    for (int n = 0; n < static_cast<int>(traj.u.size()); ++n) {
        w.cell(n).cell(traj.grid.t(n));
        if (n < static_cast<int>(traj.v.size())) {
            w.cell(space.norm_H(traj.v[n])).cell(space.norm_W(traj.v[n]));
        } else {
            w.empty().empty();
        }
        w.cell(space.norm_V(traj.u[n]));
        if (n >= 1 && n <= static_cast<int>(traj.steps.size())) {
            const StepRecord& s = traj.steps[n - 1];
            w.cell(s.iterations).cell(s.certified_residual).cell(s.graph_distance);
        } else {
            w.empty().empty().empty();
        }
        w.end_row();
    }
    return w.str();
}

std::string interpolants_csv(const Trajectory& traj) {
    const FemSpace& space = traj.suite->space();
    const InterpolantSet set = make_interpolants(traj);
    const auto& b = set.v.breakpoints();
    CsvWriter w({"t", "v_tau_H", "v_hat_tau_H"});
    auto row = [&](double t) { w.cell(t).cell(space.norm_H(set.v(t))).cell(space.norm_H(set.v_hat(t))); w.end_row(); };
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        row(b[k]);
        row(0.5 * (b[k] + b[k + 1]));
    }
    row(b.back());
    return w.str();
}

std::string final_state_csv(const Trajectory& traj) {
    const FemSpace& space = traj.suite->space();
    const Eigen::VectorXd u = space.to_nodal(traj.u.back());
    const Eigen::VectorXd v = space.to_nodal(traj.v.back());
    CsvWriter w({"x", "u", "v"});
    for (int i = 0; i < space.num_nodes(); ++i) {
        w.cell(space.x(i)).cell(u[i]).cell(v[i]);
        w.end_row();
    }
    return w.str();
}

std::string averaging_identity_text(const AveragingIdentityReport& r) {
    io::KeyValueReport kv;
    kv.add("identity.lhs", r.lhs)
        .add("identity.rhs", r.rhs)
        .add("identity.rel_diff", r.rel_diff)
        .add("identity.bound", r.bound)
        .add("identity.equal", r.equal)
        .add("identity.bound_holds", r.bound_holds);
    return kv.str();
}

std::string step_log(const Trajectory& traj) {
    std::ostringstream out;
    for (const StepRecord& s : traj.steps) {
        out << "step n=" << s.n << " t=" << format_double(s.t) << " iterations=" << s.iterations
            << " levels=" << s.levels << " eps=" << format_double(s.eps)
            << " residual=" << format_double(s.residual) << " certified_residual="
            << format_double(s.certified_residual) << " graph_distance=" << format_double(s.graph_distance)
            << " certified=" << (s.certified ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace rothe
