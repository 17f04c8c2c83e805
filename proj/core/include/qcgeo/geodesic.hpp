#pragma once

#include <cstdint>
#include <vector>

#include "qcgeo/metric.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo {

struct BvpConfig {
  int steps = 2001;              // output grid size
  double newton_tol = 1e-9;      // max-abs endpoint residual
  int max_newton_iters = 30;
  int restarts = 8;              // perturbed-guess retries after the chord guess
  double fd_jacobian_eps = 1e-7; // relative step for the shooting Jacobian
  std::uint64_t seed = 1234;     // restart perturbation stream

  void validate() const {
    if (steps < 64) throw DomainError("BvpConfig.steps must be >= 64");
    if (!(newton_tol > 0.0) || !(fd_jacobian_eps > 0.0)) {
      throw DomainError("BvpConfig tolerances must be > 0");
    }
    if (max_newton_iters < 1 || restarts < 0) {
      throw DomainError("BvpConfig iteration counts out of range");
    }
  }
};

struct SolveDiagnostics {
  int newton_iters = 0;
  int restarts_used = 0;
  double final_residual = 0.0;
};

struct SweepEntry {
  double eta_f = 0.0;
  double length = 0.0;
  bool converged = false;
};

/// Lengths over a grid of final phases plus the refined minimizer.
struct SweepResult {
  std::vector<SweepEntry> grid;
  double argmin_eta = 0.0;
  double argmin_length = 0.0;
};

/// Integrates the geodesic equations d^2 x^mu/dt^2 + Gamma^mu_{nu n} v^nu v^n = 0
/// from (start, v0) over [0, t_f], resampled to `steps` uniform times. Uses
/// closed-form symbols for isotropic weights, numeric ones otherwise. Throws
/// SingularityError (with the exit time) if the path reaches the guard band.
Trajectory integrate_ivp(GroupTag tag, const AnisotropyWeights& weights,
                         const GroupParams& start, const std::array<double, 3>& v0,
                         double t_f, int steps);

/// Two-point geodesic boundary-value problem by single shooting: Newton on v0
/// with a finite-difference Jacobian, chord initial guess, perturbed restarts.
/// The affine parameter is normalized to [0, 1].
Trajectory solve_bvp(GroupTag tag, const AnisotropyWeights& weights,
                     const GroupParams& start, const GroupParams& end,
                     const BvpConfig& cfg = {}, SolveDiagnostics* diag = nullptr);

/// Geodesic of the reduced isotropic 2D metric between (c1, phi) endpoints,
/// lifted to the full manifold by attaching the optimal phase history
/// (eta(0) = 0). The result is a geodesic of the full 3D metric.
Trajectory reduced_geodesic(GroupTag tag, const std::array<double, 2>& start2,
                            const std::array<double, 2>& end2, int steps = 2001);

/// Solves one BVP per grid value of the final phase eta_f (start phase fixed),
/// then refines the discrete argmin by golden-section search between its grid
/// neighbours. Per-entry solver failures are recorded, not fatal.
SweepResult sweep_fiber(GroupTag tag, const AnisotropyWeights& weights,
                        const GroupParams& start, const std::array<double, 2>& end2,
                        const std::vector<double>& eta_grid,
                        const BvpConfig& cfg = {}, int threads = 1);

/// Brute-force upper bound on the geodesic distance: a free polyline of
/// n_knots interior points, initialized on the chord, locally descended
/// coordinate-wise with shrinking steps. Independent of the shooting solver.
double path_oracle(GroupTag tag, const AnisotropyWeights& weights,
                   const GroupParams& start, const GroupParams& end,
                   int n_knots = 50, int iters = 400);

}  // namespace qcgeo
