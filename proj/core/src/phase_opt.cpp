#include "qcgeo/phase_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcgeo/ode.hpp"
#include "qcgeo/parallel.hpp"
#include "qcgeo/quadrature.hpp"
#include "shooting.hpp"

namespace qcgeo {

void validate_path(const PrescribedPath& path) {
  const std::size_t n = path.times.size();
  if (n < 256) throw InputError("prescribed path needs at least 256 samples");
  if (path.c1.size() != n || path.phi.size() != n || path.c1_dot.size() != n ||
      path.phi_dot.size() != n) {
    throw InputError("prescribed path array length mismatch");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(path.times[i + 1] > path.times[i])) {
      throw InputError("prescribed path times must be strictly increasing");
    }
  }
  path.weights.validate();
  for (double c : path.c1) {
    if (!is_interior(path.tag, c, 0.0)) {
      throw DomainError("prescribed path touches a singular boundary");
    }
  }
}

PrescribedPath ramp_squared_path(GroupTag tag, int samples, double t_f,
                                 const AnisotropyWeights& weights) {
  if (samples < 256) throw DomainError("path needs at least 256 samples");
  if (!(t_f > 0.0)) throw DomainError("t_f must be > 0");
  PrescribedPath p;
  p.tag = tag;
  p.weights = weights;
  p.times = detail::uniform_grid(0.0, t_f, samples);
  p.c1.resize(p.times.size());
  p.phi.resize(p.times.size());
  p.c1_dot.assign(p.times.size(), 1.0 / t_f);
  p.phi_dot.resize(p.times.size());
  for (std::size_t i = 0; i < p.times.size(); ++i) {
    const double c = p.times[i] / t_f + 0.2;
    p.c1[i] = c;
    p.phi[i] = c * c;
    p.phi_dot[i] = 2.0 * c / t_f;
  }
  validate_path(p);
  return p;
}

PrescribedPath path_from_samples(GroupTag tag, const AnisotropyWeights& weights,
                                 std::vector<double> times, std::vector<double> c1,
                                 std::vector<double> phi) {
  PrescribedPath p;
  p.tag = tag;
  p.weights = weights;
  p.times = std::move(times);
  p.c1 = std::move(c1);
  p.phi = std::move(phi);
  const std::size_t n = p.times.size();
  if (p.c1.size() != n || p.phi.size() != n) {
    throw InputError("path samples length mismatch");
  }
  if (n < 3) throw InputError("path needs at least 3 samples");
  p.c1_dot.resize(n);
  p.phi_dot.resize(n);
  auto deriv = [&](const std::vector<double>& f, std::size_t i) {
    const std::size_t j = (i == 0) ? 1 : (i == n - 1 ? n - 2 : i);
    const double t0 = p.times[j - 1], t1 = p.times[j], t2 = p.times[j + 1];
    const double d01 = (f[j] - f[j - 1]) / (t1 - t0);
    const double d12 = (f[j + 1] - f[j]) / (t2 - t1);
    const double d012 = (d12 - d01) / (t2 - t0);
    return d01 + d012 * (2.0 * p.times[i] - t0 - t1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    p.c1_dot[i] = deriv(p.c1, i);
    p.phi_dot[i] = deriv(p.phi, i);
  }
  validate_path(p);
  return p;
}

OptimalPhase optimal_phase(const PrescribedPath& path) {
  validate_path(path);
  OptimalPhase out;
  out.times = path.times;
  out.eta_dot.resize(path.times.size());
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const GroupParams p{path.c1[i], path.phi[i], 0.0};
    const MetricTensor g = metric_at(path.tag, path.weights, p);
    out.eta_dot[i] = -(g.g[2][0] * path.c1_dot[i] + g.g[2][1] * path.phi_dot[i]) /
                     g.g[2][2];
  }
  out.eta = cumulative_integral(out.times, out.eta_dot);
  return out;
}

SubmanifoldMetric induced_metric(const PrescribedPath& path) {
  validate_path(path);
  const std::size_t n = path.times.size();
  std::vector<double> a(n), b(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GroupParams p{path.c1[i], path.phi[i], 0.0};
    const MetricTensor g = metric_at(path.tag, path.weights, p);
    const double dc = path.c1_dot[i], dp = path.phi_dot[i];
    a[i] = g.g[2][2];
    b[i] = g.g[2][0] * dc + g.g[2][1] * dp;
    c[i] = g.g[0][0] * dc * dc + g.g[1][1] * dp * dp + 2.0 * g.g[0][1] * dc * dp;
    if (!(a[i] > 0.0) || !(a[i] * c[i] - b[i] * b[i] > 0.0)) {
      throw DomainError("induced submanifold metric is degenerate");
    }
  }
  SubmanifoldMetric m;
  m.u0_ = path.times.front();
  m.u1_ = path.times.back();
  m.a_ = CubicSpline::fit(path.times, a);
  m.b_ = CubicSpline::fit(path.times, b);
  m.c_ = CubicSpline::fit(path.times, std::move(c));
  return m;
}

SubmanifoldChristoffels submanifold_christoffels(const SubmanifoldMetric& m,
                                                 double u) {
  const double A = m.A(u), B = m.B(u), C = m.C(u);
  const double dA = m.dA(u), dB = m.dB(u), dC = m.dC(u);
  const double det = A * C - B * B;
  if (!(det > 0.0)) throw NumericError("degenerate induced metric");
  SubmanifoldChristoffels g;
  g.u_uu = (0.5 * A * dC - B * dB) / det;
  g.u_ue = -0.5 * B * dA / det;
  g.u_ee = -0.5 * A * dA / det;
  g.e_uu = (C * dB - 0.5 * B * dC) / det;
  g.e_ue = 0.5 * C * dA / det;
  g.e_ee = 0.5 * B * dA / det;
  return g;
}

namespace {

// parameter-independent path form of the geodesic equations on (u, eta):
// eta'' as a cubic polynomial in eta'
struct SubmanifoldRhs {
  const SubmanifoldMetric* m;
  void operator()(double u, const std::array<double, 2>& y,
                  std::array<double, 2>& dy) const {
    const SubmanifoldChristoffels g = submanifold_christoffels(*m, u);
    const double ep = y[1];
    dy[0] = ep;
    dy[1] = -g.e_uu + (g.u_uu - 2.0 * g.e_ue) * ep +
            (2.0 * g.u_ue - g.e_ee) * ep * ep + g.u_ee * ep * ep * ep;
  }
};

}  // namespace

SubmanifoldGeodesic submanifold_geodesic(const SubmanifoldMetric& m, double eta_f,
                                         int steps) {
  if (!std::isfinite(eta_f)) throw DomainError("eta_f must be finite");
  if (steps < 64) throw DomainError("submanifold_geodesic needs steps >= 64");
  const SubmanifoldRhs rhs{&m};
  // the graph-form ODE is cubic in eta'; abort runaway slopes early so a bad
  // Newton trial fails fast instead of grinding the step controller
  auto slope_guard = [](double, const std::array<double, 2>& y) {
    return std::isfinite(y[1]) && std::abs(y[1]) < 1e3;
  };
  OdeOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-13;
  const double span = m.u_max() - m.u_min();
  auto residual_of = [&](const std::array<double, 1>& slope) {
    const auto yf = rk45_integrate<2>(rhs, {0.0, slope[0]}, m.u_min(), m.u_max(),
                                      opt, slope_guard);
    return std::array<double, 1>{yf[0] - eta_f};
  };
  const std::array<double, 1> chord{eta_f / span};
  double best_residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= 6; ++attempt) {
    std::array<double, 1> guess = chord;
    if (attempt > 0) {
      guess[0] += (attempt % 2 == 0 ? 1.0 : -1.0) *
                  static_cast<double>((attempt + 1) / 2) *
                  std::max(1.0, std::abs(chord[0]));
    }
    try {
      const auto shot = detail::newton_shoot<1>(residual_of, guess, 1e-10, 30, 1e-7);
      best_residual = std::min(best_residual, shot.residual);
      if (!shot.converged) continue;
      SubmanifoldGeodesic out;
      out.times = detail::uniform_grid(m.u_min(), m.u_max(), steps);
      out.eta.resize(out.times.size());
      out.eta_prime.resize(out.times.size());
      std::vector<double> rate(out.times.size());
      rk45_sample<2>(rhs, {0.0, shot.v0[0]}, out.times, opt, slope_guard,
                     [&](std::size_t i, double u, const std::array<double, 2>& y) {
                       out.eta[i] = y[0];
                       out.eta_prime[i] = y[1];
                       const double q = m.C(u) + 2.0 * m.B(u) * y[1] +
                                        m.A(u) * y[1] * y[1];
                       rate[i] = std::sqrt(std::max(q, 0.0));
                     });
      out.length = integrate_samples(out.times, rate);
      return out;
    } catch (const Error&) {
    }
  }
  throw SolverError("submanifold geodesic shooting did not converge", best_residual);
}

SweepResult sweep_submanifold(const SubmanifoldMetric& m,
                              const std::vector<double>& eta_grid, int threads) {
  if (eta_grid.empty()) throw InputError("submanifold sweep needs a nonempty grid");
  SweepResult result;
  result.grid.resize(eta_grid.size());
  parallel_for(eta_grid.size(), threads, [&](std::size_t i) {
    SweepEntry& e = result.grid[i];
    e.eta_f = eta_grid[i];
    try {
      e.length = submanifold_geodesic(m, eta_grid[i], 257).length;
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
    throw SolverError("every submanifold sweep entry failed",
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
            return submanifold_geodesic(m, eta_f, 257).length;
          } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
          }
        },
        lo, hi, 1e-4);
    if (refined.second < result.argmin_length) {
      result.argmin_eta = refined.first;
      result.argmin_length = refined.second;
    }
  }
  return result;
}

Trajectory assemble_optimal_trajectory(const PrescribedPath& path) {
  return assemble_perturbed_trajectory(path, 0.0, 2.0);
}

Trajectory assemble_perturbed_trajectory(const PrescribedPath& path, double delta_eta,
                                         double shape_divisor) {
  if (!(shape_divisor > 0.0)) throw DomainError("shape divisor must be > 0");
  const OptimalPhase opt = optimal_phase(path);
  Trajectory traj;
  traj.tag = path.tag;
  traj.weights = path.weights;
  traj.times = path.times;
  traj.points.resize(path.times.size());
  traj.velocities.resize(path.times.size());
  const double omega = std::numbers::pi / (shape_divisor * path.t_f());
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const double t = path.times[i];
    traj.points[i] = GroupParams{path.c1[i], path.phi[i],
                                 opt.eta[i] + delta_eta * std::sin(omega * t)};
    traj.velocities[i] = {path.c1_dot[i], path.phi_dot[i],
                          opt.eta_dot[i] + delta_eta * omega * std::cos(omega * t)};
  }
  return traj;
}

std::vector<std::pair<double, double>> perturbation_scan(
    const PrescribedPath& path, const std::vector<double>& delta_grid,
    double shape_divisor) {
  if (delta_grid.empty()) throw InputError("perturbation scan needs a nonempty grid");
  std::vector<std::pair<double, double>> out(delta_grid.size());
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    const Trajectory traj =
        assemble_perturbed_trajectory(path, delta_grid[i], shape_divisor);
    out[i] = {delta_grid[i], trajectory_length(traj)};
  }
  return out;
}

}  // namespace qcgeo
