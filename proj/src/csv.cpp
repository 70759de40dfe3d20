#include "odorchain/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace odorchain {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,x1,x2,x3\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out += format_double(traj.times[i]);
        out += ',';
        out += format_double(traj.states[i].x1);
        out += ',';
        out += format_double(traj.states[i].x2);
        out += ',';
        out += format_double(traj.states[i].x3);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const EquilibriumCurve& curve) {
    std::string out = "param,x1,x2,x3,N1,N2,N3,H,verdict,exists\n";
    for (const auto& pt : curve.points) {
        out += format_double(pt.param);
        out += ',';
        out += format_double(pt.eq.point.x1);
        out += ',';
        out += format_double(pt.eq.point.x2);
        out += ',';
        out += format_double(pt.eq.point.x3);
        out += ',';
        out += format_double(pt.stab.char_poly.c1);
        out += ',';
        out += format_double(pt.stab.char_poly.c2);
        out += ',';
        out += format_double(pt.stab.char_poly.c3);
        out += ',';
        out += format_double(pt.stab.char_poly.hurwitz());
        out += ',';
        out += to_string(pt.stab.verdict);
        out += ',';
        out += pt.eq.exists ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string events_csv(const std::vector<BifurcationEvent>& events) {
    std::string out = "kind,param_name,critical_value,bracket_lo,bracket_hi,transversal\n";
    for (const auto& ev : events) {
        out += to_string(ev.kind);
        out += ',';
        out += ev.parameter;
        out += ',';
        out += format_double(ev.critical_value);
        out += ',';
        out += format_double(ev.bracket_lo);
        out += ',';
        out += format_double(ev.bracket_hi);
        out += ',';
        out += ev.transversal ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string amplitude_csv(const std::vector<AmplitudePoint>& points) {
    std::string out = "param,amp_x1,amp_x2,amp_x3\n";
    for (const auto& ap : points) {
        out += format_double(ap.param);
        for (int c = 0; c < 3; ++c) {
            out += ',';
            out += ap.diverged ? "inf" : format_double(ap.amplitude[c]);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace odorchain
