#include "qcgeo/lie_rep.hpp"

#include <cmath>

namespace qcgeo {

namespace {

const Complex kI(0.0, 1.0);

Complex2x2 pauli(int index) {
  switch (index) {
    case 0:
      return {Complex(0), Complex(1), Complex(1), Complex(0)};
    case 1:
      return {Complex(0), Complex(0, -1), Complex(0, 1), Complex(0)};
    default:
      return {Complex(1), Complex(0), Complex(0), Complex(-1)};
  }
}

}  // namespace

Complex2x2 generator(GroupTag tag, int index) {
  if (index < 0 || index > 2) {
    throw DomainError("generator index must be 0, 1 or 2");
  }
  if (tag == GroupTag::SU2) return pauli(index);
  // K_0 = sigma_z/2, K_1 = i sigma_x/2, K_2 = i sigma_y/2
  switch (index) {
    case 0:
      return Complex(0.5) * pauli(2);
    case 1:
      return (Complex(0.5) * kI) * pauli(0);
    default:
      return (Complex(0.5) * kI) * pauli(1);
  }
}

Complex2x2 evolution_operator(GroupTag tag, const GroupParams& p) {
  if (!std::isfinite(p.c1) || !std::isfinite(p.phi) || !std::isfinite(p.eta)) {
    throw DomainError("non-finite group parameters");
  }
  const Complex eph = std::exp(-kI * (p.phi / 2.0));
  const Complex eeta = std::exp(-kI * p.eta);
  // left factor: diag(e^{-i phi/2}, e^{i phi/2}); right factor: diag(e^{-i eta}, e^{i eta})
  Complex2x2 mid;
  if (tag == GroupTag::SU2) {
    const double c = std::cos(p.c1 / 2.0), s = std::sin(p.c1 / 2.0);
    mid = {Complex(c), Complex(-s), Complex(s), Complex(c)};
  } else {
    // exp(-i rho K_2) = exp(rho sigma_y / 2)
    const double ch = std::cosh(p.c1 / 2.0), sh = std::sinh(p.c1 / 2.0);
    mid = {Complex(ch), -kI * sh, kI * sh, Complex(ch)};
  }
  return {eph * mid.m[0] * eeta, eph * mid.m[1] / eeta,
          mid.m[2] * eeta / eph, mid.m[3] / (eph * eeta)};
}

QuantumState state_from_params(GroupTag tag, const GroupParams& p) {
  const Complex phase = std::exp(kI * p.eta);
  const Complex em = std::exp(-kI * (p.phi / 2.0));
  const Complex ep = std::exp(kI * (p.phi / 2.0));
  if (tag == GroupTag::SU2) {
    return {phase * (-em * std::sin(p.c1 / 2.0)), phase * (ep * std::cos(p.c1 / 2.0))};
  }
  // U (0,1)^T carries a factor -i (not -1) on the upper component
  return {phase * (-kI * em * std::sinh(p.c1 / 2.0)),
          phase * (ep * std::cosh(p.c1 / 2.0))};
}

QuantumState apply(const Complex2x2& u, const QuantumState& s) {
  return {u.m[0] * s.a[0] + u.m[1] * s.a[1], u.m[2] * s.a[0] + u.m[3] * s.a[1]};
}

double pseudo_norm(const QuantumState& s) {
  return std::norm(s.a[0]) - std::norm(s.a[1]);
}

double state_norm(const QuantumState& s) {
  return std::sqrt(std::norm(s.a[0]) + std::norm(s.a[1]));
}

Complex2x2 hamiltonian_from_unitary_path(const std::function<Complex2x2(double)>& u,
                                         double t, double dt_fd) {
  if (!(dt_fd > 0.0)) throw DomainError("dt_fd must be > 0");
  const Complex2x2 up = u(t + dt_fd);
  const Complex2x2 um = u(t - dt_fd);
  Complex2x2 dudt = (up - um) * Complex(1.0 / (2.0 * dt_fd));
  Complex2x2 h = kI * (dudt * u(t).inverse());
  if (!all_finite(h)) throw NumericError("non-finite Hamiltonian from unitary path");
  return h;
}

}  // namespace qcgeo
