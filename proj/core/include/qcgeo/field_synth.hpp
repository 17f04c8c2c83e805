#pragma once

#include <vector>

#include "qcgeo/complex2x2.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo {

/// Instantaneous driving triple: (B_x, B_y, B_z) for SU2, (xi_0, xi_1, xi_2)
/// for SU11. Angular-frequency units with hbar = 1.
struct FieldVector {
  std::array<double, 3> f{};
};

struct FieldTrajectory {
  GroupTag tag = GroupTag::SU2;
  std::vector<double> times;
  std::vector<FieldVector> fields;
};

/// Drive components for a point moving with the given coordinate velocity:
/// SU2:  B_x = eta' cos(phi) sin(theta) - theta' sin(phi)/2, ...
/// SU11: xi_0 = 2 eta' cosh(rho) + phi', ...
FieldVector fields_at(GroupTag tag, const GroupParams& point,
                      const std::array<double, 3>& velocity);

/// fields_at applied sample-wise; velocities are reconstructed by centered
/// differencing when the trajectory does not carry them.
FieldTrajectory fields_along(const Trajectory& traj);

/// H = sum_i f_i * generator_i. Hermitian for SU2; for SU11 it satisfies
/// H^dag sigma_z = sigma_z H.
Complex2x2 hamiltonian_from_fields(GroupTag tag, const FieldVector& f);

/// Exact left-inverse of hamiltonian_from_fields: B_i = Tr[H sigma_i]/2,
/// xi_i = 2 Tr[H K_i^dag]. Throws ConsistencyError if H is not in the span of
/// the generators (projection residual above 1e-9).
FieldVector project_fields(GroupTag tag, const Complex2x2& h);

/// Unit Bloch vector (sin th cos ph, sin th sin ph, cos th) for SU2 exports.
std::array<double, 3> bloch_vector(const GroupParams& point);

}  // namespace qcgeo
