#include "qcgeo/trajectory.hpp"

#include <cmath>

namespace qcgeo {

void validate_trajectory(const Trajectory& traj, bool require_interior_points) {
  const std::size_t n = traj.times.size();
  if (n < 2) throw InputError("trajectory needs at least 2 samples");
  if (traj.points.size() != n) {
    throw InputError("trajectory points/times length mismatch");
  }
  if (!traj.velocities.empty() && traj.velocities.size() != n) {
    throw InputError("trajectory velocities/times length mismatch");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(traj.times[i + 1] > traj.times[i])) {
      throw InputError("trajectory times must be strictly increasing");
    }
  }
  traj.weights.validate();
  if (require_interior_points) {
    for (const auto& p : traj.points) require_interior(traj.tag, p, 0.0);
  }
}

namespace {

// derivative of the unique quadratic through three samples, evaluated at x
double lagrange_derivative(double x, double x0, double y0, double x1, double y1,
                           double x2, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double d012 = (d12 - d01) / (x2 - x0);
  return d01 + d012 * (2.0 * x - x0 - x1);
}

}  // namespace

Trajectory with_velocities(const Trajectory& traj) {
  if (!traj.velocities.empty()) return traj;
  Trajectory out = traj;
  const std::size_t n = traj.size();
  out.velocities.resize(n);
  auto coord = [&](std::size_t i, int k) {
    const GroupParams& p = traj.points[i];
    return k == 0 ? p.c1 : (k == 1 ? p.phi : p.eta);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i == 0) ? 1 : (i == n - 1 ? n - 2 : i);
    for (int k = 0; k < 3; ++k) {
      out.velocities[i][static_cast<std::size_t>(k)] = lagrange_derivative(
          traj.times[i], traj.times[j - 1], coord(j - 1, k), traj.times[j],
          coord(j, k), traj.times[j + 1], coord(j + 1, k));
    }
  }
  return out;
}

Trajectory rescale_time(const Trajectory& traj, double t_f) {
  if (!(t_f > 0.0)) throw DomainError("t_f must be > 0");
  const double span = traj.times.back() - traj.times.front();
  if (!(span > 0.0)) throw InputError("degenerate trajectory time span");
  const double scale = t_f / span;
  Trajectory out = traj;
  for (auto& t : out.times) t = (t - traj.times.front()) * scale;
  for (auto& v : out.velocities) {
    for (auto& c : v) c /= scale;
  }
  return out;
}

}  // namespace qcgeo
