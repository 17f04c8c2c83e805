#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcgeo/field_synth.hpp"
#include "qcgeo/geodesic.hpp"
#include "qcgeo/metric.hpp"

using namespace qcgeo;

namespace {

constexpr double pi = std::numbers::pi;

// endpoints of the SU2 fiber-sweep figure
const GroupParams kFig1Start{pi / 8, pi / 8, 0.0};
const std::array<double, 2> kFig1End2{5 * pi / 8, 7 * pi / 8};

double rate_spread(const Trajectory& traj) {
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double r = cost_rate(traj.tag, traj.weights, traj.points[i], traj.velocities[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return (hi - lo) / std::max(hi, 1e-300);
}

std::array<double, 3> unit_bloch(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

double great_circle_length(const std::array<double, 2>& a2,
                           const std::array<double, 2>& b2) {
  const auto a = unit_bloch(a2[0], a2[1]);
  const auto b = unit_bloch(b2[0], b2[1]);
  return 0.5 * std::acos(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

// max residual of the full geodesic ODE along a sampled trajectory, with
// accelerations taken from 4th-order centered differences of the stored
// velocities
double geodesic_residual(const Trajectory& traj) {
  double worst = 0.0;
  const double dt = traj.times[1] - traj.times[0];
  for (std::size_t i = 2; i + 2 < traj.size(); i += 10) {
    const ChristoffelSymbols gam = christoffel_analytic(traj.tag, traj.points[i]);
    for (int mu = 0; mu < 3; ++mu) {
      const std::size_t m = static_cast<std::size_t>(mu);
      const double acc = (-traj.velocities[i + 2][m] + 8.0 * traj.velocities[i + 1][m] -
                          8.0 * traj.velocities[i - 1][m] + traj.velocities[i - 2][m]) /
                         (12.0 * dt);
      double gvv = 0.0;
      for (int nu = 0; nu < 3; ++nu) {
        for (int n = 0; n < 3; ++n) {
          gvv += gam.gamma[m][static_cast<std::size_t>(nu)]
                          [static_cast<std::size_t>(n)] *
                 traj.velocities[i][static_cast<std::size_t>(nu)] *
                 traj.velocities[i][static_cast<std::size_t>(n)];
        }
      }
      worst = std::max(worst, std::abs(acc + gvv));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("geodesic") {

TEST_CASE("ivp basics") {
  // zero velocity: constant trajectory
  const Trajectory still =
      integrate_ivp(GroupTag::SU2, {}, {1.0, 0.4, -0.2}, {0, 0, 0}, 1.0, 101);
  for (const auto& p : still.points) {
    CHECK(p.c1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.phi == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.eta == doctest::Approx(-0.2).epsilon(1e-12));
  }

  // meridian great circle: theta advances linearly, constant speed pi/2
  const Trajectory meridian =
      integrate_ivp(GroupTag::SU2, {}, {pi / 2, 0.0, 0.0}, {pi, 0, 0}, 0.4, 201);
  CHECK(meridian.points.back().c1 == doctest::Approx(0.9 * pi).epsilon(1e-10));
  CHECK(meridian.points.back().phi == doctest::Approx(0.0));
  CHECK(cost_rate(GroupTag::SU2, {}, meridian.points[100], meridian.velocities[100]) ==
        doctest::Approx(pi / 2).epsilon(1e-10));
  CHECK(rate_spread(meridian) < 1e-6);

  // the same ray over t_f = 1 reaches the pole and must fail cleanly
  try {
    integrate_ivp(GroupTag::SU2, {}, {pi / 2, 0.0, 0.0}, {pi, 0, 0}, 1.0, 201);
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.exit_time() == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("ivp conserves speed for random launches") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  const AnisotropyWeights aniso{{1.3, 0.8, 1.1}};
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    for (const AnisotropyWeights& w : {AnisotropyWeights::isotropic(), aniso}) {
      for (int i = 0; i < 5; ++i) {
        const GroupParams start{tag == GroupTag::SU2 ? 1.2 : 0.9, 0.3, 0.0};
        const std::array<double, 3> v0{u(rng), u(rng), u(rng)};
        const Trajectory traj = integrate_ivp(tag, w, start, v0, 1.0, 501);
        CHECK(rate_spread(traj) < 1e-6);
      }
    }
  }
}

TEST_CASE("bvp: trivial and figure endpoints") {
  // coincident endpoints: the zero-velocity solution
  const Trajectory still = solve_bvp(GroupTag::SU2, {}, {1.0, 0.2, 0.1}, {1.0, 0.2, 0.1});
  CHECK(trajectory_length(still) == doctest::Approx(0.0).epsilon(1e-12));

  SolveDiagnostics diag;
  for (double eta_f : {-0.8, -0.4, 0.0, 0.4}) {
    const GroupParams end{kFig1End2[0], kFig1End2[1], eta_f};
    const Trajectory traj = solve_bvp(GroupTag::SU2, {}, kFig1Start, end, {}, &diag);
    CHECK(diag.final_residual < 1e-9);
    CHECK(std::abs(traj.points.back().c1 - end.c1) < 1e-9);
    CHECK(std::abs(traj.points.back().phi - end.phi) < 1e-9);
    CHECK(std::abs(traj.points.back().eta - end.eta) < 1e-9);
    CHECK(rate_spread(traj) < 1e-6);
  }
}

TEST_CASE("bvp: time-reversal symmetry of the length") {
  const GroupParams a{0.9, 0.2, 0.0}, b{1.8, 1.4, -0.3};
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    const double fwd = trajectory_length(solve_bvp(tag, {}, a, b));
    const double bwd = trajectory_length(solve_bvp(tag, {}, b, a));
    CHECK(fwd == doctest::Approx(bwd).epsilon(1e-9));
  }
}

TEST_CASE("reduced geodesics: closed-form lengths and full-ODE lift") {
  const Trajectory quarter =
      reduced_geodesic(GroupTag::SU2, {pi / 2, 0.0}, {pi / 2, pi / 2}, 2001);
  CHECK(trajectory_length(quarter) == doctest::Approx(pi / 4).epsilon(1e-6));

  const Trajectory fig1 = reduced_geodesic(GroupTag::SU2, {pi / 8, pi / 8}, kFig1End2, 2001);
  CHECK(trajectory_length(fig1) ==
        doctest::Approx(great_circle_length({pi / 8, pi / 8}, kFig1End2)).epsilon(1e-6));
  CHECK(geodesic_residual(fig1) < 1e-6);

  const Trajectory fig3 = reduced_geodesic(GroupTag::SU11, {1.5, 0.0}, {1.0, 4 * pi / 5}, 2001);
  CHECK(fig3.points.back().c1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fig3.points.back().phi == doctest::Approx(4 * pi / 5).epsilon(1e-9));
  CHECK(geodesic_residual(fig3) < 1e-6);
}

TEST_CASE("reduced geodesics drive with a constant field") {
  const Trajectory fig1 = reduced_geodesic(GroupTag::SU2, {pi / 8, pi / 8}, kFig1End2, 2001);
  const FieldTrajectory fields = fields_along(fig1);
  // closed form: B = (omega/2) * axis, axis = normalized n_i x n_f
  const auto ni = unit_bloch(pi / 8, pi / 8);
  const auto nf = unit_bloch(kFig1End2[0], kFig1End2[1]);
  std::array<double, 3> axis{ni[1] * nf[2] - ni[2] * nf[1],
                             ni[2] * nf[0] - ni[0] * nf[2],
                             ni[0] * nf[1] - ni[1] * nf[0]};
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  const double omega = 2.0 * great_circle_length({pi / 8, pi / 8}, kFig1End2);
  for (auto& a : axis) a *= omega / (2.0 * norm);
  for (std::size_t i = 0; i < fields.fields.size(); i += 100) {
    for (int k = 0; k < 3; ++k) {
      CHECK(fields.fields[i].f[static_cast<std::size_t>(k)] ==
            doctest::Approx(axis[static_cast<std::size_t>(k)]).epsilon(1e-6));
    }
  }
}

TEST_CASE("fiber sweep agrees with the reduced geodesic") {
  const Trajectory lifted = reduced_geodesic(GroupTag::SU2, {pi / 8, pi / 8}, kFig1End2, 1001);
  const double eta_star = lifted.points.back().eta;
  const double len_star = trajectory_length(lifted);

  std::vector<double> grid;
  for (int i = -6; i <= 6; ++i) grid.push_back(eta_star + 0.12 * i);
  BvpConfig cfg;
  cfg.steps = 801;
  const SweepResult sweep =
      sweep_fiber(GroupTag::SU2, {}, kFig1Start, kFig1End2, grid, cfg, 2);

  for (const auto& e : sweep.grid) CHECK(e.converged);
  CHECK(std::abs(sweep.argmin_eta - eta_star) < 5e-3);
  CHECK(sweep.argmin_length == doctest::Approx(len_star).epsilon(1e-4));
  // lengths grow monotonically away from the argmin inside the window
  const std::size_t mid = 6;
  for (std::size_t i = 0; i + 1 < sweep.grid.size(); ++i) {
    if (i + 1 <= mid) {
      CHECK(sweep.grid[i].length >= sweep.grid[i + 1].length - 1e-12);
    } else {
      CHECK(sweep.grid[i + 1].length >= sweep.grid[i].length - 1e-12);
    }
  }

  const SweepResult single = sweep_fiber(GroupTag::SU2, {}, kFig1Start, kFig1End2,
                                         {eta_star}, cfg);
  CHECK(single.argmin_eta == doctest::Approx(eta_star));
}

TEST_CASE("path oracle") {
  const GroupParams a{pi / 2, 0.0, 0.0};
  CHECK(path_oracle(GroupTag::SU2, {}, a, a, 16, 50) == doctest::Approx(0.0));

  const GroupParams b{pi / 2, pi / 2, 0.0};
  const double quarter = path_oracle(GroupTag::SU2, {}, a, b, 24, 200);
  CHECK(quarter == doctest::Approx(pi / 4).epsilon(0.01));
  CHECK(quarter > pi / 4 - 1e-6);  // an upper bound on the distance

  const GroupParams end{kFig1End2[0], kFig1End2[1], -0.4};
  const double via_bvp = trajectory_length(solve_bvp(GroupTag::SU2, {}, kFig1Start, end));
  const double via_oracle = path_oracle(GroupTag::SU2, {}, kFig1Start, end, 50, 400);
  CHECK(via_oracle == doctest::Approx(via_bvp).epsilon(0.01));
  CHECK(via_oracle > via_bvp - 1e-6);
}

}  // TEST_SUITE
