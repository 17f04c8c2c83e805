#include "qcgeo/field_synth.hpp"

#include <cmath>

#include "qcgeo/lie_rep.hpp"

namespace qcgeo {

FieldVector fields_at(GroupTag tag, const GroupParams& point,
                      const std::array<double, 3>& velocity) {
  const double dc1 = velocity[0], dphi = velocity[1], deta = velocity[2];
  const double cp = std::cos(point.phi), sp = std::sin(point.phi);
  FieldVector out;
  if (tag == GroupTag::SU2) {
    const double st = std::sin(point.c1), ct = std::cos(point.c1);
    out.f[0] = deta * cp * st - 0.5 * dc1 * sp;
    out.f[1] = deta * sp * st + 0.5 * dc1 * cp;
    out.f[2] = deta * ct + 0.5 * dphi;
  } else {
    const double sh = std::sinh(point.c1), ch = std::cosh(point.c1);
    out.f[0] = 2.0 * deta * ch + dphi;
    out.f[1] = 2.0 * deta * cp * sh - dc1 * sp;
    out.f[2] = 2.0 * deta * sp * sh + dc1 * cp;
  }
  for (double fi : out.f) {
    if (!std::isfinite(fi)) throw NumericError("non-finite field component");
  }
  return out;
}

FieldTrajectory fields_along(const Trajectory& traj) {
  validate_trajectory(traj, /*require_interior_points=*/false);
  const Trajectory t = with_velocities(traj);
  FieldTrajectory out;
  out.tag = t.tag;
  out.times = t.times;
  out.fields.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.fields.push_back(fields_at(t.tag, t.points[i], t.velocities[i]));
  }
  return out;
}

Complex2x2 hamiltonian_from_fields(GroupTag tag, const FieldVector& f) {
  Complex2x2 h = Complex2x2::zero();
  for (int i = 0; i < 3; ++i) {
    h += Complex(f.f[static_cast<std::size_t>(i)]) * generator(tag, i);
  }
  return h;
}

FieldVector project_fields(GroupTag tag, const Complex2x2& h) {
  FieldVector out;
  for (int i = 0; i < 3; ++i) {
    const Complex2x2 gen = generator(tag, i);
    Complex coeff;
    if (tag == GroupTag::SU2) {
      coeff = 0.5 * (h * gen).trace();
    } else {
      coeff = 2.0 * (h * gen.dagger()).trace();
    }
    out.f[static_cast<std::size_t>(i)] = coeff.real();
  }
  const Complex2x2 resid = h - hamiltonian_from_fields(tag, out);
  if (max_abs(resid) > 1e-9) {
    throw ConsistencyError("Hamiltonian not in the span of the group generators");
  }
  return out;
}

std::array<double, 3> bloch_vector(const GroupParams& point) {
  const double st = std::sin(point.c1), ct = std::cos(point.c1);
  return {st * std::cos(point.phi), st * std::sin(point.phi), ct};
}

}  // namespace qcgeo
