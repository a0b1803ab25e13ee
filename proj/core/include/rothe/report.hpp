#pragma once

#include <string>

#include "rothe/interpolants.hpp"
#include "rothe/scheme.hpp"

namespace rothe {

// n, t_n, |v^n|_H, |v^n|_W, |u^n|_V, step_iterations, step_residual,
// graph_distance for n = 0..N. Cells without a value stay empty.
std::string trajectory_csv(const Trajectory& traj);

// t, |v_tau(t)|_H, |v_hat_tau(t)|_H at every breakpoint of the half grid and
// at the midpoint of every interval.
std::string interpolants_csv(const Trajectory& traj);

// x, u^N, v^{N-1} at the mesh nodes (Dirichlet nodes included).
std::string final_state_csv(const Trajectory& traj);

std::string averaging_identity_text(const AveragingIdentityReport& r);

// One line per step record; no timing information, so the log is byte-stable.
std::string step_log(const Trajectory& traj);

}  // namespace rothe
