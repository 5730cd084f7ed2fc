#pragma once

#include "istc/simulate.hpp"

#include <iosfwd>
#include <string>

namespace istc::sim {

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double value);

/// CSV with header k,t,x,u,v,w_avg,x_sup and one row per step, full double
/// precision.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace istc::sim
