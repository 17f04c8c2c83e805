#pragma once

#include <utility>
#include <vector>

#include "qcgeo/geodesic.hpp"
#include "qcgeo/metric.hpp"
#include "qcgeo/spline.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo {

/// A prescribed state trajectory (c1(t), phi(t)) sampled on a dense grid over
/// [0, t_f], with coordinate velocities.
struct PrescribedPath {
  GroupTag tag = GroupTag::SU2;
  AnisotropyWeights weights{};
  std::vector<double> times;
  std::vector<double> c1, phi;
  std::vector<double> c1_dot, phi_dot;

  double t_f() const { return times.back(); }
};

void validate_path(const PrescribedPath& path);

/// Built-in example path c1(t) = t/t_f + 1/5, phi(t) = c1(t)^2, with exact
/// derivatives (this is the `paper-example` keyword of the CLI).
PrescribedPath ramp_squared_path(GroupTag tag, int samples = 2001, double t_f = 1.0,
                                 const AnisotropyWeights& weights = {});

/// Path from tabulated samples; velocities by centered differencing.
PrescribedPath path_from_samples(GroupTag tag, const AnisotropyWeights& weights,
                                 std::vector<double> times, std::vector<double> c1,
                                 std::vector<double> phi);

/// The phase history that minimizes the cost of driving along the path:
/// eta' = -(g_{eta c1} c1' + g_{eta phi} phi') / g_{eta eta}, eta(0) = 0,
/// accumulated with a running Simpson-type quadrature on the path grid.
struct OptimalPhase {
  std::vector<double> times, eta, eta_dot;
};
OptimalPhase optimal_phase(const PrescribedPath& path);

/// Induced 2D metric ds^2 = A deta^2 + 2 B deta du + C du^2 on the (u, eta)
/// surface swept by the fibers over the path, where u is the path time.
/// Components are sampled on the path grid and splined for off-grid access.
class SubmanifoldMetric {
 public:
  double u_min() const { return u0_; }
  double u_max() const { return u1_; }
  double A(double u) const { return a_.value(u); }
  double B(double u) const { return b_.value(u); }
  double C(double u) const { return c_.value(u); }
  double dA(double u) const { return a_.derivative(u); }
  double dB(double u) const { return b_.derivative(u); }
  double dC(double u) const { return c_.derivative(u); }

 private:
  friend SubmanifoldMetric induced_metric(const PrescribedPath&);
  double u0_ = 0.0, u1_ = 1.0;
  CubicSpline a_, b_, c_;
};

SubmanifoldMetric induced_metric(const PrescribedPath& path);

/// Christoffel symbols of the induced metric at u (coordinates (u, eta)).
struct SubmanifoldChristoffels {
  double u_uu = 0, u_ue = 0, u_ee = 0;  // Gamma^u_{..}
  double e_uu = 0, e_ue = 0, e_ee = 0;  // Gamma^eta_{..}
};
SubmanifoldChristoffels submanifold_christoffels(const SubmanifoldMetric& m, double u);

/// Geodesic of the induced metric from (u_min, 0) to (u_max, eta_f), solved as
/// a scalar shooting problem on eta'(u_min), sampled at `steps` uniform u.
struct SubmanifoldGeodesic {
  std::vector<double> times, eta, eta_prime;
  double length = 0.0;
};
SubmanifoldGeodesic submanifold_geodesic(const SubmanifoldMetric& m, double eta_f,
                                         int steps = 2001);

/// Lengths over a grid of final phases plus the golden-section-refined argmin.
SweepResult sweep_submanifold(const SubmanifoldMetric& m,
                              const std::vector<double>& eta_grid, int threads = 1);

/// Cost of the 3D curve (c1, phi, eta_opt + delta * sin(pi t / (k t_f))) per
/// delta in the grid, evaluated through the full 3D metric. k is the
/// shape_divisor (2 or 3 for the two half-sine shapes).
std::vector<std::pair<double, double>> perturbation_scan(
    const PrescribedPath& path, const std::vector<double>& delta_grid,
    double shape_divisor);

/// The path plus its optimal phase as a full Trajectory.
Trajectory assemble_optimal_trajectory(const PrescribedPath& path);

/// Same with the half-sine phase deviation added.
Trajectory assemble_perturbed_trajectory(const PrescribedPath& path, double delta_eta,
                                         double shape_divisor);

}  // namespace qcgeo
