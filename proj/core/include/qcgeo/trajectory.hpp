#pragma once

#include <vector>

#include "qcgeo/group.hpp"

namespace qcgeo {

/// Time-ordered samples of (point, velocity) over [0, t_f]. Velocities may be
/// left empty; consumers reconstruct them by centered differencing.
struct Trajectory {
  GroupTag tag = GroupTag::SU2;
  AnisotropyWeights weights{};
  std::vector<double> times;
  std::vector<GroupParams> points;
  std::vector<std::array<double, 3>> velocities;

  std::size_t size() const { return times.size(); }
};

/// Checks strictly increasing times and consistent array lengths; optionally
/// that every point is interior. Throws InputError / DomainError.
void validate_trajectory(const Trajectory& traj, bool require_interior_points = true);

/// Returns a copy with velocities filled in where missing: 2nd-order centered
/// differences in the interior, one-sided 2nd-order at the endpoints.
Trajectory with_velocities(const Trajectory& traj);

/// Rescales the time axis to [0, t_f]; velocities scale by the inverse factor,
/// so the total cost is unchanged.
Trajectory rescale_time(const Trajectory& traj, double t_f);

}  // namespace qcgeo
