#pragma once

#include <string>
#include <vector>

#include "odorchain/bifurcation.hpp"
#include "odorchain/fracsolve.hpp"

namespace odorchain {

/// Shortest round-trip decimal form of a double (17 significant digits),
/// identical across runs.
std::string format_double(double v);

/// header t,x1,x2,x3
std::string trajectory_csv(const Trajectory& traj);

/// header param,x1,x2,x3,N1,N2,N3,H,verdict,exists
std::string sweep_csv(const EquilibriumCurve& curve);

/// header kind,param_name,critical_value,bracket_lo,bracket_hi,transversal
std::string events_csv(const std::vector<BifurcationEvent>& events);

/// header param,amp_x1,amp_x2,amp_x3
std::string amplitude_csv(const std::vector<AmplitudePoint>& points);

void write_file(const std::string& path, const std::string& content);

} // namespace odorchain
