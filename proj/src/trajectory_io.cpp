#include "istc/trajectory_io.hpp"

#include <charconv>
#include <ostream>

namespace istc::sim {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "k,t,x,u,v,w_avg,x_sup\n";
    for (const StepRecord& r : traj.records) {
        out += std::to_string(r.k);
        out += ',';
        out += format_double(r.t);
        out += ',';
        out += format_double(r.x);
        out += ',';
        out += format_double(r.u);
        out += ',';
        out += format_double(r.v);
        out += ',';
        out += format_double(r.w_avg);
        out += ',';
        out += format_double(r.x_sup);
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << trajectory_csv(traj);
}

}  // namespace istc::sim
