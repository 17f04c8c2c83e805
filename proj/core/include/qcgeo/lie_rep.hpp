#pragma once

#include <functional>

#include "qcgeo/complex2x2.hpp"
#include "qcgeo/group.hpp"

namespace qcgeo {

/// Two-component state. SU2 states are unit vectors; SU11 states obey the
/// indefinite norm psi^dag sigma_z psi = -1 (lower component carries cosh).
struct QuantumState {
  std::array<Complex, 2> a{};
};

/// Generator matrices. SU2: index 0,1,2 -> sigma_x, sigma_y, sigma_z.
/// SU11: index 0,1,2 -> K_0 = sigma_z/2, K_1 = i sigma_x/2, K_2 = i sigma_y/2.
Complex2x2 generator(GroupTag tag, int index);

/// Evolution operator of the three-factor parameterization:
/// SU2:  U = exp(-i phi sigma_z/2) exp(-i theta sigma_y/2) exp(-i eta sigma_z)
/// SU11: U = exp(-i phi K_0) exp(-i rho K_2) exp(-i 2 eta K_0)
Complex2x2 evolution_operator(GroupTag tag, const GroupParams& p);

/// Closed form of evolution_operator(tag, p) applied to (0, 1)^T.
QuantumState state_from_params(GroupTag tag, const GroupParams& p);

QuantumState apply(const Complex2x2& u, const QuantumState& s);

/// psi^dag sigma_z psi (real part; imaginary part vanishes identically).
double pseudo_norm(const QuantumState& s);

/// Euclidean norm.
double state_norm(const QuantumState& s);

/// H(t) = i (dU/dt) U^{-1} via central differences of width dt_fd.
Complex2x2 hamiltonian_from_unitary_path(const std::function<Complex2x2(double)>& u,
                                         double t, double dt_fd = 1e-6);

}  // namespace qcgeo
