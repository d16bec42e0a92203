#pragma once

#include <iosfwd>
#include <string>

#include "p1/p1_taylor.hpp"

namespace p1 {

/// Columns re(z), im(z), re(y), im(y), re(y'), im(y'), |E-drift|.
void write_trajectory_csv(const P1Trajectory& tr, std::ostream& os);

/// Versioned binary checkpoint, magic header "P1TRAJ1". Values are stored
/// as raw binary128 so a reload is bit-exact.
void save_trajectory(const P1Trajectory& tr, std::ostream& os);
P1Trajectory load_trajectory(std::istream& is);

void save_trajectory(const P1Trajectory& tr, const std::string& path);
P1Trajectory load_trajectory(const std::string& path);

}  // namespace p1
