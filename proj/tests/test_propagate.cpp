#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcgeo/field_synth.hpp"
#include "qcgeo/geodesic.hpp"
#include "qcgeo/phase_opt.hpp"
#include "qcgeo/propagate.hpp"

using namespace qcgeo;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

FieldTrajectory constant_fields(GroupTag tag, const std::array<double, 3>& f,
                                double t_f, int samples) {
  FieldTrajectory out;
  out.tag = tag;
  for (int i = 0; i < samples; ++i) {
    out.times.push_back(t_f * i / (samples - 1));
    out.fields.push_back({f});
  }
  return out;
}

}  // namespace

TEST_SUITE("propagate") {

TEST_CASE("zero fields leave the state alone") {
  const FieldTrajectory none = constant_fields(GroupTag::SU2, {0, 0, 0}, 1.0, 11);
  const QuantumState psi{Complex(0.6), Complex(0.8)};
  const StateEvolution ev = evolve(none, psi);
  CHECK(std::abs(ev.states.back().a[0] - psi.a[0]) < 1e-12);
  CHECK(std::abs(ev.states.back().a[1] - psi.a[1]) < 1e-12);
}

TEST_CASE("constant sigma_z drive picks up the exact phases") {
  const double omega = 0.9;
  const double t_f = pi / (2 * omega);
  const FieldTrajectory fz = constant_fields(GroupTag::SU2, {0, 0, omega}, t_f, 2001);
  const StateEvolution ev = evolve(fz, QuantumState{Complex(0), Complex(1)});
  // exp(-i omega t sz) (0,1) = (0, e^{i omega t}); at t_f the phase is i
  CHECK(std::abs(ev.states.back().a[0]) < 1e-10);
  CHECK(std::abs(ev.states.back().a[1] - I) < 1e-10);

  const OperatorEvolution op = evolve(fz, Complex2x2::identity());
  CHECK(std::abs(op.operators.back()(0, 0) - std::exp(-I * (pi / 2))) < 1e-10);
}

TEST_CASE("fidelity") {
  const QuantumState s = state_from_params(GroupTag::SU2, {1.1, 0.4, 0.2});
  CHECK(fidelity(GroupTag::SU2, s, s) == doctest::Approx(1.0));
  QuantumState rotated = s;
  rotated.a[0] *= std::exp(I * 0.8);
  rotated.a[1] *= std::exp(I * 0.8);
  CHECK(fidelity(GroupTag::SU2, s, rotated) == doctest::Approx(1.0));

  const QuantumState north{Complex(0), Complex(1)};
  const QuantumState south{Complex(-1), Complex(0)};
  CHECK(fidelity(GroupTag::SU2, north, south) == doctest::Approx(0.0));

  const QuantumState h = state_from_params(GroupTag::SU11, {0.9, -0.7, 0.1});
  CHECK(fidelity(GroupTag::SU11, h, h) == doctest::Approx(1.0));
  QuantumState hp = h;
  hp.a[0] *= std::exp(I * 1.3);
  hp.a[1] *= std::exp(I * 1.3);
  CHECK(fidelity(GroupTag::SU11, h, hp) == doctest::Approx(1.0));

  CHECK_THROWS_AS(fidelity(GroupTag::SU2, {Complex(2), Complex(0)}, north), InputError);
}

TEST_CASE("verify a constant trajectory") {
  Trajectory still;
  still.tag = GroupTag::SU2;
  for (int i = 0; i < 32; ++i) {
    still.times.push_back(i / 31.0);
    still.points.push_back({1.2, 0.5, -0.1});
    still.velocities.push_back({0, 0, 0});
  }
  const PropagationReport rep = verify_trajectory(still);
  CHECK(rep.final_infidelity < 1e-12);
  CHECK(rep.max_param_deviation < 1e-10);
  CHECK(rep.unitarity_drift < 1e-12);
}

TEST_CASE("round trip: solved geodesics propagate back onto themselves") {
  const GroupParams start{pi / 8, pi / 8, 0.0};
  const GroupParams end{5 * pi / 8, 7 * pi / 8, -0.4};
  const Trajectory traj = solve_bvp(GroupTag::SU2, {}, start, end);
  const PropagationReport rep = verify_trajectory(traj);
  CHECK(rep.final_infidelity < 1e-8);
  CHECK(rep.max_param_deviation < 1e-6);
  CHECK(rep.unitarity_drift < 1e-10);

  const Trajectory fig3 = reduced_geodesic(GroupTag::SU11, {1.5, 0.0}, {1.0, 4 * pi / 5}, 2001);
  const PropagationReport rep11 = verify_trajectory(fig3);
  CHECK(rep11.final_infidelity < 1e-8);
  CHECK(rep11.max_param_deviation < 1e-6);
  CHECK(rep11.pseudo_norm_drift < 1e-10);
}

TEST_CASE("bloch vector follows dn/dt = 2 B x n") {
  const PrescribedPath path = ramp_squared_path(GroupTag::SU2, 2001);
  const Trajectory traj = assemble_optimal_trajectory(path);
  const FieldTrajectory fields = fields_along(traj);
  const StateEvolution ev = evolve(fields, state_from_params(traj.tag, traj.points.front()));

  auto bloch_of = [](const QuantumState& s) {
    const Complex rho01 = s.a[0] * std::conj(s.a[1]);
    return std::array<double, 3>{2.0 * rho01.real(), -2.0 * rho01.imag(),
                                 std::norm(s.a[0]) - std::norm(s.a[1])};
  };
  const double dt = ev.times[1] - ev.times[0];
  for (std::size_t i = 1; i + 1 < ev.states.size(); i += 100) {
    const auto nm = bloch_of(ev.states[i - 1]);
    const auto n0 = bloch_of(ev.states[i]);
    const auto np = bloch_of(ev.states[i + 1]);
    const auto& b = fields.fields[i].f;
    const std::array<double, 3> cross{b[1] * n0[2] - b[2] * n0[1],
                                      b[2] * n0[0] - b[0] * n0[2],
                                      b[0] * n0[1] - b[1] * n0[0]};
    for (int k = 0; k < 3; ++k) {
      const double ndot = (np[static_cast<std::size_t>(k)] - nm[static_cast<std::size_t>(k)]) / (2 * dt);
      CHECK(std::abs(ndot - 2.0 * cross[static_cast<std::size_t>(k)]) < 1e-5);
    }
  }
}

}  // TEST_SUITE
