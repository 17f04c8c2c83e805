#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcgeo/metric.hpp"

using namespace qcgeo;

namespace {

constexpr double pi = std::numbers::pi;

GroupParams random_interior(std::mt19937& rng, GroupTag tag) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GroupParams p;
  p.c1 = tag == GroupTag::SU2 ? 0.15 + 2.8 * u(rng) : 0.1 + 2.2 * u(rng);
  p.phi = -3.0 + 6.0 * u(rng);
  p.eta = -3.0 + 6.0 * u(rng);
  return p;
}

std::array<double, 3> random_velocity(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng)};
}

// completed-square forms of the isotropic line elements, an independent route
// to v^T g v (overall weight c rescales ds by c)
double iso_quad_oracle(GroupTag tag, double c, const GroupParams& p,
                       const std::array<double, 3>& v) {
  if (tag == GroupTag::SU2) {
    const double a = v[2] + 0.5 * std::cos(p.c1) * v[1];
    const double b = 0.25 * (v[0] * v[0] + std::sin(p.c1) * std::sin(p.c1) * v[1] * v[1]);
    return c * c * (a * a + b);
  }
  const double ch2 = std::cosh(2.0 * p.c1);
  const double a = std::sqrt(ch2) * v[2] + std::cosh(p.c1) / (2.0 * std::sqrt(ch2)) * v[1];
  const double b =
      0.25 * (v[0] * v[0] + std::sinh(p.c1) * std::sinh(p.c1) / ch2 * v[1] * v[1]);
  return c * c * (a * a + b);
}

double gamma_at(const ChristoffelSymbols& g, int mu, int nu, int n) {
  return g.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)]
                [static_cast<std::size_t>(n)];
}

double max_gamma_diff(const ChristoffelSymbols& a, const ChristoffelSymbols& b) {
  double m = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      for (int n = 0; n < 3; ++n) {
        m = std::max(m, std::abs(gamma_at(a, mu, nu, n) - gamma_at(b, mu, nu, n)));
      }
    }
  }
  return m;
}

Trajectory quarter_circle(int samples) {
  Trajectory traj;
  traj.tag = GroupTag::SU2;
  traj.weights = AnisotropyWeights::isotropic();
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    traj.times.push_back(t);
    traj.points.push_back({pi / 2, (pi / 2) * t, 0.0});
    traj.velocities.push_back({0.0, pi / 2, 0.0});
  }
  return traj;
}

}  // namespace

TEST_SUITE("metric") {

TEST_CASE("component values at reference points") {
  const MetricTensor a =
      metric_at(GroupTag::SU2, AnisotropyWeights::isotropic(), {pi / 2, 0.3, 0});
  CHECK(a.g[2][2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.g[0][0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.g[1][1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(a.g[0][2]) < 1e-15);
  CHECK(std::abs(a.g[1][2]) < 1e-15);

  const MetricTensor b = metric_at(GroupTag::SU2, {{2.0, 1.0, 1.0}}, {pi / 2, 0.0, 0});
  CHECK(b.g[2][2] == doctest::Approx(4.0));
  CHECK(b.g[0][0] == doctest::Approx(0.25));
  CHECK(b.g[1][1] == doctest::Approx(0.25));
  CHECK(std::abs(b.g[0][2]) < 1e-15);
  CHECK(std::abs(b.g[1][2]) < 1e-15);

  const double rho = 0.8;
  const MetricTensor c =
      metric_at(GroupTag::SU11, AnisotropyWeights::isotropic(), {rho, 1.1, 0});
  CHECK(c.g[2][2] == doctest::Approx(std::cosh(2 * rho)).epsilon(1e-14));
  CHECK(c.g[0][0] == doctest::Approx(0.25));
  CHECK(c.g[1][1] == doctest::Approx(0.25));
  CHECK(std::abs(c.g[0][2]) < 1e-15);
  CHECK(c.g[1][2] == doctest::Approx(0.5 * std::cosh(rho)).epsilon(1e-14));

  CHECK_THROWS_AS(metric_at(GroupTag::SU2, {}, {-0.1, 0, 0}), DomainError);
  CHECK_THROWS_AS(metric_at(GroupTag::SU11, {}, {-1e-9, 0, 0}), DomainError);
  CHECK_THROWS_AS(metric_at(GroupTag::SU2, {{1, 1, 0}}, {1.0, 0, 0}), DomainError);
}

TEST_CASE("isotropic metric equals the completed-square forms") {
  std::mt19937 rng(41);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    for (double c : {1.0, 1.7}) {
      const AnisotropyWeights w{{c, c, c}};
      for (int i = 0; i < 500; ++i) {
        const GroupParams p = random_interior(rng, tag);
        const auto v = random_velocity(rng);
        const double direct = metric_at(tag, w, p).quad(v);
        CHECK(direct == doctest::Approx(iso_quad_oracle(tag, c, p, v)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("positive definite at interior points") {
  std::mt19937 rng(42);
  const AnisotropyWeights aniso{{1.4, 0.7, 2.2}};
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    for (int i = 0; i < 200; ++i) {
      const GroupParams p = random_interior(rng, tag);
      CHECK(metric_at(tag, AnisotropyWeights::isotropic(), p).positive_definite());
      CHECK(metric_at(tag, aniso, p).positive_definite());
    }
  }
}

TEST_CASE("christoffels of a flat metric vanish") {
  MetricFn flat = [](const GroupParams&) {
    MetricTensor m;
    m.g[0][0] = 2.0;
    m.g[1][1] = 3.0;
    m.g[2][2] = 1.0;
    m.g[0][1] = m.g[1][0] = 0.2;
    return m;
  };
  const ChristoffelSymbols g = christoffel_numeric(flat, {1.0, 0.5, 0.0});
  CHECK(max_gamma_diff(g, ChristoffelSymbols{}) < 1e-12);
}

TEST_CASE("closed-form symbols at reference points") {
  const ChristoffelSymbols s2 = christoffel_analytic(GroupTag::SU2, {pi / 2, 0.4, 0});
  CHECK(gamma_at(s2, 0, 2, 1) == doctest::Approx(1.0));          // Gamma^theta_{eta phi}
  CHECK(std::abs(gamma_at(s2, 2, 2, 0)) < 1e-15);                // Gamma^eta_{eta theta}
  CHECK(gamma_at(s2, 2, 1, 0) == doctest::Approx(-0.25));        // Gamma^eta_{phi theta}
  CHECK(gamma_at(s2, 1, 2, 0) == doctest::Approx(-1.0));         // Gamma^phi_{eta theta}

  const ChristoffelSymbols s1 = christoffel_analytic(GroupTag::SU11, {1.0, 0.0, 0});
  CHECK(gamma_at(s1, 0, 2, 2) == doctest::Approx(-4.0 * std::sinh(2.0)));
  CHECK(gamma_at(s1, 2, 2, 0) == doctest::Approx(1.5 / std::tanh(1.0)));
}

TEST_CASE("numeric symbols converge to the closed forms at O(h^2)") {
  std::mt19937 rng(43);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    MetricFn iso = [tag](const GroupParams& p) {
      return metric_at(tag, AnisotropyWeights::isotropic(), p);
    };
    for (int i = 0; i < 10; ++i) {
      GroupParams p = random_interior(rng, tag);
      p.c1 = std::clamp(p.c1, 0.3, tag == GroupTag::SU2 ? pi - 0.3 : 2.3);
      const ChristoffelSymbols exact = christoffel_analytic(tag, p);
      CHECK(max_gamma_diff(christoffel_numeric(iso, p, 1e-5), exact) < 1e-7);
      const double e_coarse = max_gamma_diff(christoffel_numeric(iso, p, 2e-3), exact);
      const double e_fine = max_gamma_diff(christoffel_numeric(iso, p, 1e-3), exact);
      CHECK(e_coarse / e_fine == doctest::Approx(4.0).epsilon(0.35));
    }
  }
  CHECK_THROWS_AS(christoffel_analytic(GroupTag::SU2, {0.0, 0, 0}), DomainError);
}

TEST_CASE("cost rate basics and weight scaling") {
  CHECK(cost_rate(GroupTag::SU2, {}, {1.0, 0.2, 0.0}, {0, 0, 0}) == doctest::Approx(0.0));
  CHECK(cost_rate(GroupTag::SU2, {}, {pi / 2, 0.0, 0.0}, {2, 0, 0}) == doctest::Approx(1.0));
  // rho = 0 with a pure phase velocity: rate = sqrt(cosh 0) = 1
  CHECK(cost_rate(GroupTag::SU11, {}, {0.0, 0.7, 0.0}, {0, 0, 1}) == doctest::Approx(1.0));

  std::mt19937 rng(44);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    for (int i = 0; i < 50; ++i) {
      const GroupParams p = random_interior(rng, tag);
      const auto v = random_velocity(rng);
      const AnisotropyWeights w{{0.9, 1.3, 0.6}};
      const AnisotropyWeights w3{{3 * 0.9, 3 * 1.3, 3 * 0.6}};
      CHECK(cost_rate(tag, w3, p, v) ==
            doctest::Approx(3.0 * cost_rate(tag, w, p, v)).epsilon(1e-13));
    }
  }
}

TEST_CASE("trajectory length") {
  // constant trajectory
  Trajectory still;
  still.tag = GroupTag::SU2;
  still.times = {0.0, 0.5, 1.0};
  still.points = {{1.0, 0.2, 0.0}, {1.0, 0.2, 0.0}, {1.0, 0.2, 0.0}};
  still.velocities = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  CHECK(trajectory_length(still) == doctest::Approx(0.0));

  // quarter great circle on the radius-1/2 sphere
  const Trajectory arc = quarter_circle(501);
  CHECK(trajectory_length(arc) == doctest::Approx(pi / 4).epsilon(1e-9));

  // additive over concatenation
  Trajectory first = arc, second = arc;
  first.times.resize(251);
  first.points.resize(251);
  first.velocities.resize(251);
  second.times.erase(second.times.begin(), second.times.begin() + 250);
  second.points.erase(second.points.begin(), second.points.begin() + 250);
  second.velocities.erase(second.velocities.begin(), second.velocities.begin() + 250);
  CHECK(trajectory_length(first) + trajectory_length(second) ==
        doctest::Approx(trajectory_length(arc)).epsilon(1e-9));

  Trajectory bad = still;
  bad.times = {0.0, 0.5, 0.4};
  CHECK_THROWS_AS(trajectory_length(bad), InputError);
}

}  // TEST_SUITE
