#pragma once

#include <string>
#include <vector>

#include "qcgeo/geodesic.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo::cli {

/// Writes `t,c1,phi,eta,v_c1,v_phi,v_eta,f0,f1,f2,cost_rate,cum_cost` rows
/// (plus `n_x,n_y,n_z` for SU2) at full round-trip precision; the write is
/// atomic (temp file + rename). Returns the final cumulative cost.
double write_trajectory_csv(const std::string& filename, const Trajectory& traj);

/// Reads a trajectory CSV produced by write_trajectory_csv back into the
/// (t, point, velocity) samples; group and weights come from the caller.
Trajectory read_trajectory_csv(const std::string& filename, GroupTag tag,
                               const AnisotropyWeights& weights);

/// `grid_value,length,converged` rows.
void write_sweep_csv(const std::string& filename,
                     const std::vector<SweepEntry>& entries);

}  // namespace qcgeo::cli
