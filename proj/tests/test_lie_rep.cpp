#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcgeo/lie_rep.hpp"

using namespace qcgeo;

namespace {

const Complex I(0.0, 1.0);
constexpr double pi = std::numbers::pi;

double cdiff(const Complex2x2& a, const Complex2x2& b) { return max_abs_diff(a, b); }

Complex2x2 commutator(const Complex2x2& a, const Complex2x2& b) {
  return a * b - b * a;
}

GroupParams random_params(std::mt19937& rng, GroupTag tag) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GroupParams p;
  p.c1 = tag == GroupTag::SU2 ? 0.1 + 2.9 * u(rng) : 0.05 + 2.0 * u(rng);
  p.phi = -3.0 + 6.0 * u(rng);
  p.eta = -3.0 + 6.0 * u(rng);
  return p;
}

// expansion of the SU2 operator over {1, sigma_x, sigma_y, sigma_z}; an
// independent route to the same matrix as the three-factor product
Complex2x2 su2_expansion(const GroupParams& p) {
  const double ch = std::cos(p.c1 / 2), sh = std::sin(p.c1 / 2);
  const double ap = p.eta + p.phi / 2, am = p.eta - p.phi / 2;
  Complex2x2 u = Complex(ch * std::cos(ap)) * Complex2x2::identity();
  u += (-I * sh * std::sin(am)) * generator(GroupTag::SU2, 0);
  u += (-I * sh * std::cos(am)) * generator(GroupTag::SU2, 1);
  u += (-I * ch * std::sin(ap)) * generator(GroupTag::SU2, 2);
  return u;
}

// SU11 analog over {1, K_0, K_1, K_2} (coefficients carry a factor 2 because
// the K_i are half-normalized)
Complex2x2 su11_expansion(const GroupParams& p) {
  const double ch = std::cosh(p.c1 / 2), sh = std::sinh(p.c1 / 2);
  const double ap = p.eta + p.phi / 2, am = p.eta - p.phi / 2;
  Complex2x2 u = Complex(ch * std::cos(ap)) * Complex2x2::identity();
  u += (-2.0 * I * sh * std::sin(am)) * generator(GroupTag::SU11, 1);
  u += (-2.0 * I * sh * std::cos(am)) * generator(GroupTag::SU11, 2);
  u += (-2.0 * I * ch * std::sin(ap)) * generator(GroupTag::SU11, 0);
  return u;
}

}  // namespace

TEST_SUITE("lie_rep") {

TEST_CASE("generator definitions") {
  const Complex2x2 sz = generator(GroupTag::SU2, 2);
  CHECK(sz(0, 0) == Complex(1.0));
  CHECK(sz(1, 1) == Complex(-1.0));
  CHECK(sz(0, 1) == Complex(0.0));

  const Complex2x2 k0 = generator(GroupTag::SU11, 0);
  CHECK(k0(0, 0) == Complex(0.5));
  CHECK(k0(1, 1) == Complex(-0.5));

  CHECK_THROWS_AS(generator(GroupTag::SU2, 3), DomainError);
  CHECK_THROWS_AS(generator(GroupTag::SU11, -1), DomainError);
}

TEST_CASE("generator algebra") {
  // [sigma_a, sigma_b] = 2 i eps_abc sigma_c
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const Complex2x2 lhs = commutator(generator(GroupTag::SU2, a), generator(GroupTag::SU2, b));
    CHECK(cdiff(lhs, (2.0 * I) * generator(GroupTag::SU2, c)) < 1e-15);
  }
  // [K0, K1] = i K2, [K1, K2] = -i K0, [K2, K0] = i K1
  const Complex2x2 k0 = generator(GroupTag::SU11, 0);
  const Complex2x2 k1 = generator(GroupTag::SU11, 1);
  const Complex2x2 k2 = generator(GroupTag::SU11, 2);
  CHECK(cdiff(commutator(k0, k1), I * k2) < 1e-15);
  CHECK(cdiff(commutator(k1, k2), -I * k0) < 1e-15);
  CHECK(cdiff(commutator(k2, k0), I * k1) < 1e-15);
}

TEST_CASE("evolution operator special points") {
  CHECK(cdiff(evolution_operator(GroupTag::SU2, {0, 0, 0}), Complex2x2::identity()) < 1e-15);

  const Complex2x2 u = evolution_operator(GroupTag::SU2, {0, 0, pi / 2});
  CHECK(std::abs(u(0, 0) - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(u(1, 1) - Complex(0, 1)) < 1e-15);

  const Complex2x2 v = evolution_operator(GroupTag::SU11, {0, 0, 0.7});
  CHECK(std::abs(v(0, 0) - std::exp(-I * 0.7)) < 1e-15);
  CHECK(std::abs(v(1, 1) - std::exp(I * 0.7)) < 1e-15);
  CHECK(std::abs(v(0, 1)) < 1e-15);
}

TEST_CASE("operator equals its generator expansion") {
  std::mt19937 rng(31);
  for (int i = 0; i < 50; ++i) {
    const GroupParams p2 = random_params(rng, GroupTag::SU2);
    CHECK(cdiff(evolution_operator(GroupTag::SU2, p2), su2_expansion(p2)) < 1e-13);
    const GroupParams p1 = random_params(rng, GroupTag::SU11);
    CHECK(cdiff(evolution_operator(GroupTag::SU11, p1), su11_expansion(p1)) < 1e-12);
  }
}

TEST_CASE("state equals operator applied to (0,1)") {
  std::mt19937 rng(32);
  const QuantumState ground{Complex(0), Complex(1)};
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SU11}) {
    for (int i = 0; i < 100; ++i) {
      const GroupParams p = random_params(rng, tag);
      const QuantumState direct = state_from_params(tag, p);
      const QuantumState via_op = apply(evolution_operator(tag, p), ground);
      CHECK(std::abs(direct.a[0] - via_op.a[0]) < 1e-12);
      CHECK(std::abs(direct.a[1] - via_op.a[1]) < 1e-12);
    }
  }
  // theta = pi pole, against operator application
  const GroupParams pole{pi, 0, 0};
  const QuantumState s = state_from_params(GroupTag::SU2, pole);
  const QuantumState o = apply(evolution_operator(GroupTag::SU2, pole), ground);
  CHECK(std::abs(s.a[0] - o.a[0]) < 1e-15);
  CHECK(std::abs(s.a[1] - o.a[1]) < 1e-15);
  CHECK(std::abs(s.a[0] - Complex(-1.0)) < 1e-15);

  // rho = 0: (0, e^{i phi/2})
  const QuantumState z = state_from_params(GroupTag::SU11, {0, 1.3, 0});
  CHECK(std::abs(z.a[0]) < 1e-15);
  CHECK(std::abs(z.a[1] - std::exp(I * 0.65)) < 1e-15);
}

TEST_CASE("unitarity and form preservation") {
  std::mt19937 rng(33);
  const Complex2x2 sz = generator(GroupTag::SU2, 2);
  for (int i = 0; i < 50; ++i) {
    const Complex2x2 u = evolution_operator(GroupTag::SU2, random_params(rng, GroupTag::SU2));
    CHECK(cdiff(u.dagger() * u, Complex2x2::identity()) < 1e-12);
    CHECK(std::abs(std::abs(u.det()) - 1.0) < 1e-12);

    const Complex2x2 v = evolution_operator(GroupTag::SU11, random_params(rng, GroupTag::SU11));
    CHECK(cdiff(v.dagger() * sz * v, sz) < 1e-11);
    CHECK(std::abs(std::abs(v.det()) - 1.0) < 1e-11);
  }
}

TEST_CASE("pseudo norm") {
  std::mt19937 rng(34);
  for (int i = 0; i < 20; ++i) {
    const QuantumState s = state_from_params(GroupTag::SU11, random_params(rng, GroupTag::SU11));
    CHECK(pseudo_norm(s) == doctest::Approx(-1.0).epsilon(1e-11));
  }
  CHECK(pseudo_norm({Complex(0), Complex(1)}) == doctest::Approx(-1.0));
  CHECK(pseudo_norm({Complex(1), Complex(0)}) == doctest::Approx(1.0));
}

TEST_CASE("hamiltonian from a unitary path") {
  const double omega = 1.7;
  auto uz = [&](double t) { return evolution_operator(GroupTag::SU2, {0, 0, omega * t}); };
  const Complex2x2 h = hamiltonian_from_unitary_path(uz, 0.4, 1e-6);
  CHECK(cdiff(h, Complex(omega) * generator(GroupTag::SU2, 2)) < 1e-9);

  auto constant = [&](double) { return evolution_operator(GroupTag::SU2, {1.0, 0.5, -0.3}); };
  CHECK(max_abs(hamiltonian_from_unitary_path(constant, 0.0, 1e-6)) < 1e-9);

  auto u11 = [&](double t) { return evolution_operator(GroupTag::SU11, {0, 0.3, omega * t}); };
  const Complex2x2 h11 = hamiltonian_from_unitary_path(u11, 0.2, 1e-6);
  CHECK(cdiff(h11, Complex(2.0 * omega) * generator(GroupTag::SU11, 0)) < 1e-9);

  CHECK_THROWS_AS(hamiltonian_from_unitary_path(uz, 0.0, 0.0), DomainError);
}

}  // TEST_SUITE
