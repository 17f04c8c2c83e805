#include "qcgeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qcgeo/ode.hpp"
#include "shooting.hpp"
#include "qcgeo/parallel.hpp"
#include "qcgeo/quadrature.hpp"

namespace qcgeo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kOdeRtol = 1e-11;
constexpr double kOdeAtol = 1e-13;

// rho beyond this is treated as a blow-up (cosh terms ~ 1e17)
constexpr double kRhoCap = 40.0;
constexpr double kRunawayCap = 1e6;

OdeOptions geo_ode_options() {
  OdeOptions opt;
  opt.rtol = kOdeRtol;
  opt.atol = kOdeAtol;
  return opt;
}

// full 3D geodesic right-hand side over state (c1, phi, eta, v_c1, v_phi, v_eta);
// out-of-domain evaluations produce NaN so the step controller rejects them
struct GeodesicRhs {
  GroupTag tag;
  AnisotropyWeights weights;
  bool analytic;
  MetricFn metric_fn;

  GeodesicRhs(GroupTag t, const AnisotropyWeights& w)
      : tag(t), weights(w), analytic(w.is_isotropic()) {
    if (!analytic) {
      metric_fn = [t, w](const GroupParams& p) { return metric_at(t, w, p); };
    }
  }

  void operator()(double, const std::array<double, 6>& y,
                  std::array<double, 6>& dy) const {
    const double guard = analytic ? 0.0 : 3e-5;  // numeric path needs an h-neighbourhood
    if (!is_interior(tag, y[0], guard)) {
      dy.fill(kNan);
      return;
    }
    const GroupParams p{y[0], y[1], y[2]};
    const ChristoffelSymbols gam =
        analytic ? christoffel_analytic(tag, p) : christoffel_numeric(metric_fn, p);
    dy[0] = y[3];
    dy[1] = y[4];
    dy[2] = y[5];
    for (int mu = 0; mu < 3; ++mu) {
      double a = 0.0;
      for (int nu = 0; nu < 3; ++nu) {
        for (int n = 0; n < 3; ++n) {
          a += gam.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)]
                        [static_cast<std::size_t>(n)] *
               y[static_cast<std::size_t>(3 + nu)] * y[static_cast<std::size_t>(3 + n)];
        }
      }
      dy[static_cast<std::size_t>(3 + mu)] = -a;
    }
  }
};

struct InteriorGuard {
  GroupTag tag;
  bool operator()(double, const std::array<double, 6>& y) const {
    if (!is_interior(tag, y[0], kSingularGuard)) return false;
    if (tag == GroupTag::SU11 && y[0] > kRhoCap) return false;
    for (double v : y) {
      if (!std::isfinite(v) || std::abs(v) > kRunawayCap) return false;
    }
    return true;
  }
};

std::array<double, 6> pack(const GroupParams& p, const std::array<double, 3>& v) {
  return {p.c1, p.phi, p.eta, v[0], v[1], v[2]};
}

Trajectory sample_geodesic(GroupTag tag, const AnisotropyWeights& weights,
                           const GroupParams& start, const std::array<double, 3>& v0,
                           double t0, double t1, int steps) {
  const GeodesicRhs rhs(tag, weights);
  const InteriorGuard guard{tag};
  Trajectory traj;
  traj.tag = tag;
  traj.weights = weights;
  traj.times = detail::uniform_grid(t0, t1, steps);
  traj.points.resize(static_cast<std::size_t>(steps));
  traj.velocities.resize(static_cast<std::size_t>(steps));
  rk45_sample<6>(rhs, pack(start, v0), traj.times, geo_ode_options(), guard,
                 [&](std::size_t i, double, const std::array<double, 6>& y) {
                   traj.points[i] = GroupParams{y[0], y[1], y[2]};
                   traj.velocities[i] = {y[3], y[4], y[5]};
                 });
  return traj;
}

}  // namespace

Trajectory integrate_ivp(GroupTag tag, const AnisotropyWeights& weights,
                         const GroupParams& start, const std::array<double, 3>& v0,
                         double t_f, int steps) {
  weights.validate();
  require_interior(tag, start);
  if (steps < 2) throw DomainError("integrate_ivp needs steps >= 2");
  if (!(t_f > 0.0)) throw DomainError("t_f must be > 0");
  for (double v : v0) {
    if (!std::isfinite(v)) throw DomainError("non-finite initial velocity");
  }
  return sample_geodesic(tag, weights, start, v0, 0.0, t_f, steps);
}

Trajectory solve_bvp(GroupTag tag, const AnisotropyWeights& weights,
                     const GroupParams& start, const GroupParams& end,
                     const BvpConfig& cfg, SolveDiagnostics* diag) {
  weights.validate();
  cfg.validate();
  require_interior(tag, start);
  require_interior(tag, end);

  const GeodesicRhs rhs(tag, weights);
  const InteriorGuard guard{tag};
  auto residual_of = [&](const std::array<double, 3>& v0) {
    const auto yf =
        rk45_integrate<6>(rhs, pack(start, v0), 0.0, 1.0, geo_ode_options(), guard);
    return std::array<double, 3>{yf[0] - end.c1, yf[1] - end.phi, yf[2] - end.eta};
  };

  const std::array<double, 3> chord{end.c1 - start.c1, end.phi - start.phi,
                                    end.eta - start.eta};
  const double chord_scale = std::max({1.0, std::abs(chord[0]), std::abs(chord[1]),
                                       std::abs(chord[2])});
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 0.5 * chord_scale);

  double best_residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    std::array<double, 3> guess = chord;
    if (attempt > 0) {
      for (auto& g : guess) g += gauss(rng);
    }
    try {
      const auto shot = detail::newton_shoot<3>(residual_of, guess, cfg.newton_tol,
                                                cfg.max_newton_iters, cfg.fd_jacobian_eps);
      best_residual = std::min(best_residual, shot.residual);
      if (shot.converged) {
        if (diag) {
          diag->newton_iters = shot.iters;
          diag->restarts_used = attempt;
          diag->final_residual = shot.residual;
        }
        return sample_geodesic(tag, weights, start, shot.v0, 0.0, 1.0, cfg.steps);
      }
    } catch (const Error&) {
      // singular exit or blow-up during shooting: try the next perturbed guess
    }
  }
  throw SolverError("geodesic BVP did not converge after restarts", best_residual);
}

// ----------------------------------------------------------------------------
// reduced 2D geodesics (isotropic metrics only)
// ----------------------------------------------------------------------------

namespace {

// state (c1, phi, v_c1, v_phi) on ds^2 = (dc1^2 + F(c1) dphi^2)/4
struct ReducedRhs {
  GroupTag tag;
  void operator()(double, const std::array<double, 4>& y,
                  std::array<double, 4>& dy) const {
    if (!is_interior(tag, y[0], 0.0)) {
      dy.fill(kNan);
      return;
    }
    dy[0] = y[2];
    dy[1] = y[3];
    if (tag == GroupTag::SU2) {
      const double st = std::sin(y[0]), ct = std::cos(y[0]);
      dy[2] = st * ct * y[3] * y[3];
      dy[3] = -2.0 * (ct / st) * y[2] * y[3];
    } else {
      const double r2 = 2.0 * y[0];
      const double sech2 = 1.0 / std::cosh(r2);
      dy[2] = 0.5 * sech2 * std::tanh(r2) * y[3] * y[3];
      dy[3] = -2.0 * (std::cosh(y[0]) / std::sinh(y[0])) * sech2 * y[2] * y[3];
    }
  }
};

struct ReducedGuard {
  GroupTag tag;
  bool operator()(double, const std::array<double, 4>& y) const {
    if (!is_interior(tag, y[0], kSingularGuard)) return false;
    if (tag == GroupTag::SU11 && y[0] > kRhoCap) return false;
    for (double v : y) {
      if (!std::isfinite(v) || std::abs(v) > kRunawayCap) return false;
    }
    return true;
  }
};

// d eta/dt of the phase history that cancels the metric cross terms
double optimal_eta_rate(GroupTag tag, double c1, double dphi) {
  if (tag == GroupTag::SU2) return -0.5 * std::cos(c1) * dphi;
  return -std::cosh(c1) / (2.0 * std::cosh(2.0 * c1)) * dphi;
}

}  // namespace

Trajectory reduced_geodesic(GroupTag tag, const std::array<double, 2>& start2,
                            const std::array<double, 2>& end2, int steps) {
  if (steps < 64) throw DomainError("reduced_geodesic needs steps >= 64");
  if (!is_interior(tag, start2[0]) || !is_interior(tag, end2[0])) {
    throw DomainError("reduced endpoint on singular boundary");
  }
  const ReducedRhs rhs{tag};
  const ReducedGuard guard{tag};
  auto residual_of = [&](const std::array<double, 2>& v0) {
    const auto yf = rk45_integrate<4>(rhs, {start2[0], start2[1], v0[0], v0[1]}, 0.0,
                                      1.0, geo_ode_options(), guard);
    return std::array<double, 2>{yf[0] - end2[0], yf[1] - end2[1]};
  };

  const std::array<double, 2> chord{end2[0] - start2[0], end2[1] - start2[1]};
  std::mt19937_64 rng(20240811u);
  std::normal_distribution<double> gauss(
      0.0, 0.5 * std::max({1.0, std::abs(chord[0]), std::abs(chord[1])}));
  double best_residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= 8; ++attempt) {
    std::array<double, 2> guess = chord;
    if (attempt > 0) {
      for (auto& g : guess) g += gauss(rng);
    }
    try {
      const auto shot = detail::newton_shoot<2>(residual_of, guess, 1e-10, 30, 1e-7);
      if (!shot.converged) {
        best_residual = std::min(best_residual, shot.residual);
        continue;
      }
      // sample the 2D geodesic, then lift with the optimal phase
      Trajectory traj;
      traj.tag = tag;
      traj.weights = AnisotropyWeights::isotropic();
      traj.times = detail::uniform_grid(0.0, 1.0, steps);
      traj.points.resize(static_cast<std::size_t>(steps));
      traj.velocities.resize(static_cast<std::size_t>(steps));
      std::vector<double> eta_rate(static_cast<std::size_t>(steps));
      rk45_sample<4>(rhs, {start2[0], start2[1], shot.v0[0], shot.v0[1]}, traj.times,
                     geo_ode_options(), guard,
                     [&](std::size_t i, double, const std::array<double, 4>& y) {
                       traj.points[i] = GroupParams{y[0], y[1], 0.0};
                       const double erate = optimal_eta_rate(tag, y[0], y[3]);
                       traj.velocities[i] = {y[2], y[3], erate};
                       eta_rate[i] = erate;
                     });
      const std::vector<double> eta = cumulative_integral(traj.times, eta_rate);
      for (std::size_t i = 0; i < traj.points.size(); ++i) {
        traj.points[i].eta = eta[i];
      }
      return traj;
    } catch (const Error&) {
    }
  }
  throw SolverError("reduced geodesic BVP did not converge", best_residual);
}

// ----------------------------------------------------------------------------
// fiber sweep
// ----------------------------------------------------------------------------

namespace {

constexpr double kGoldenTol = 1e-4;

}  // namespace

SweepResult sweep_fiber(GroupTag tag, const AnisotropyWeights& weights,
                        const GroupParams& start, const std::array<double, 2>& end2,
                        const std::vector<double>& eta_grid, const BvpConfig& cfg,
                        int threads) {
  if (eta_grid.empty()) throw InputError("fiber sweep needs a nonempty eta grid");
  weights.validate();
  cfg.validate();

  SweepResult result;
  result.grid.resize(eta_grid.size());
  auto solve_length = [&](double eta_f, std::uint64_t seed) {
    BvpConfig c = cfg;
    c.seed = seed;
    const GroupParams end{end2[0], end2[1], eta_f};
    const Trajectory traj = solve_bvp(tag, weights, start, end, c);
    return trajectory_length(traj);
  };

  parallel_for(eta_grid.size(), threads, [&](std::size_t i) {
    SweepEntry& e = result.grid[i];
    e.eta_f = eta_grid[i];
    try {
      e.length = solve_length(eta_grid[i], cfg.seed + i);
      e.converged = true;
    } catch (const Error&) {
      e.length = std::numeric_limits<double>::quiet_NaN();
      e.converged = false;
    }
  });

  std::size_t best = eta_grid.size();
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (result.grid[i].converged &&
        (best == eta_grid.size() || result.grid[i].length < result.grid[best].length)) {
      best = i;
    }
  }
  if (best == eta_grid.size()) {
    throw SolverError("every fiber-sweep entry failed to converge",
                      std::numeric_limits<double>::infinity());
  }
  result.argmin_eta = result.grid[best].eta_f;
  result.argmin_length = result.grid[best].length;
  if (eta_grid.size() == 1) return result;

  const double lo = best > 0 ? eta_grid[best - 1] : eta_grid[best];
  const double hi = best + 1 < eta_grid.size() ? eta_grid[best + 1] : eta_grid[best];
  if (hi > lo) {
    auto refined = detail::golden_min(
        [&](double eta_f) {
          try {
            return solve_length(eta_f, cfg.seed + 0x5bd1e995u);
          } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
          }
        },
        lo, hi, kGoldenTol);
    if (refined.second < result.argmin_length) {
      result.argmin_eta = refined.first;
      result.argmin_length = refined.second;
    }
  }
  return result;
}

// ----------------------------------------------------------------------------
// brute-force path oracle
// ----------------------------------------------------------------------------

namespace {

// length of one linear segment under the cost metric, 9-point composite Simpson
double segment_length(GroupTag tag, const AnisotropyWeights& w,
                      const GroupParams& a, const GroupParams& b, double dt) {
  constexpr int kPts = 9;
  const std::array<double, 3> vel{(b.c1 - a.c1) / dt, (b.phi - a.phi) / dt,
                                  (b.eta - a.eta) / dt};
  double sum = 0.0;
  for (int q = 0; q < kPts; ++q) {
    const double s = static_cast<double>(q) / (kPts - 1);
    const GroupParams p{a.c1 + s * (b.c1 - a.c1), a.phi + s * (b.phi - a.phi),
                        a.eta + s * (b.eta - a.eta)};
    const double rate = cost_rate(tag, w, p, vel);
    const double wq = (q == 0 || q == kPts - 1) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
    sum += wq * rate;
  }
  return sum * dt / (3.0 * (kPts - 1));
}

}  // namespace

double path_oracle(GroupTag tag, const AnisotropyWeights& weights,
                   const GroupParams& start, const GroupParams& end, int n_knots,
                   int iters) {
  weights.validate();
  if (n_knots < 8) throw DomainError("path_oracle needs n_knots >= 8");
  require_interior(tag, start);
  require_interior(tag, end);

  auto coord = [](GroupParams& p, int c) -> double& {
    return c == 0 ? p.c1 : (c == 1 ? p.phi : p.eta);
  };
  const std::array<double, 3> scale{std::max(std::abs(end.c1 - start.c1), 0.2),
                                    std::max(std::abs(end.phi - start.phi), 0.2),
                                    std::max(std::abs(end.eta - start.eta), 0.2)};

  // coarse-to-fine: single-knot moves propagate shape information one knot per
  // sweep, so a fine polyline started on the chord stalls; optimizing a few
  // knots first and subdividing keeps every stage well conditioned
  std::vector<GroupParams> knots{start,
                                 {0.5 * (start.c1 + end.c1), 0.5 * (start.phi + end.phi),
                                  0.5 * (start.eta + end.eta)},
                                 end};
  std::vector<double> seg;

  auto refresh_segments = [&] {
    const double dt = 1.0 / (static_cast<double>(knots.size()) - 1.0);
    seg.resize(knots.size() - 1);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      seg[k] = segment_length(tag, weights, knots[k], knots[k + 1], dt);
    }
  };

  auto optimize_stage = [&](int max_sweeps) {
    refresh_segments();
    const double dt = 1.0 / (static_cast<double>(knots.size()) - 1.0);
    double factor = 0.25;
    auto try_move = [&](std::size_t k, const GroupParams& trial) {
      if (!is_interior(tag, trial.c1, kSingularGuard)) return false;
      const double left = segment_length(tag, weights, knots[k - 1], trial, dt);
      const double right = segment_length(tag, weights, trial, knots[k + 1], dt);
      const double delta = left + right - seg[k - 1] - seg[k];
      if (delta < -1e-15) {
        knots[k] = trial;
        seg[k - 1] = left;
        seg[k] = right;
        return true;
      }
      return false;
    };
    for (int sweep = 0; sweep < max_sweeps && factor > 1e-7; ++sweep) {
      bool coord_improved = false;
      for (std::size_t k = 1; k + 1 < knots.size(); ++k) {
        const GroupParams mid{0.5 * (knots[k - 1].c1 + knots[k + 1].c1),
                              0.5 * (knots[k - 1].phi + knots[k + 1].phi),
                              0.5 * (knots[k - 1].eta + knots[k + 1].eta)};
        const GroupParams x = knots[k];
        for (double blend : {1.0, 0.5}) {
          const GroupParams trial{x.c1 + blend * (mid.c1 - x.c1),
                                  x.phi + blend * (mid.phi - x.phi),
                                  x.eta + blend * (mid.eta - x.eta)};
          if (try_move(k, trial)) break;
        }
        for (int c = 0; c < 3; ++c) {
          for (double sign : {1.0, -1.0}) {
            GroupParams trial = knots[k];
            coord(trial, c) += sign * factor * scale[static_cast<std::size_t>(c)];
            if (try_move(k, trial)) {
              coord_improved = true;
              break;
            }
          }
        }
      }
      if (!coord_improved) factor *= 0.5;
    }
  };

  for (;;) {
    optimize_stage(iters);
    const int interior = static_cast<int>(knots.size()) - 2;
    if (interior >= n_knots) break;
    if (2 * interior + 1 <= n_knots) {
      // subdivide every segment
      std::vector<GroupParams> finer;
      finer.reserve(2 * knots.size() - 1);
      for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        finer.push_back(knots[k]);
        finer.push_back(GroupParams{0.5 * (knots[k].c1 + knots[k + 1].c1),
                                    0.5 * (knots[k].phi + knots[k + 1].phi),
                                    0.5 * (knots[k].eta + knots[k + 1].eta)});
      }
      finer.push_back(knots.back());
      knots = std::move(finer);
    } else {
      // last refinement: resample the polyline to exactly n_knots interior
      std::vector<GroupParams> finer(static_cast<std::size_t>(n_knots) + 2);
      const double m = static_cast<double>(knots.size()) - 1.0;
      for (std::size_t k = 0; k < finer.size(); ++k) {
        const double pos = m * static_cast<double>(k) /
                           (static_cast<double>(finer.size()) - 1.0);
        const std::size_t j = std::min(static_cast<std::size_t>(pos), knots.size() - 2);
        const double w = pos - static_cast<double>(j);
        finer[k] = GroupParams{knots[j].c1 + w * (knots[j + 1].c1 - knots[j].c1),
                               knots[j].phi + w * (knots[j + 1].phi - knots[j].phi),
                               knots[j].eta + w * (knots[j + 1].eta - knots[j].eta)};
      }
      knots = std::move(finer);
    }
  }

  double total = 0.0;
  for (double s : seg) total += s;
  return total;
}

}  // namespace qcgeo
