#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "qcgeo/errors.hpp"

namespace qcgeo {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row-major. Houses evolution operators,
/// Hamiltonians and the group generators.
struct Complex2x2 {
  std::array<Complex, 4> m{};

  static Complex2x2 identity() { return {Complex(1), Complex(0), Complex(0), Complex(1)}; }
  static Complex2x2 zero() { return {}; }

  Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const {
    return m[static_cast<std::size_t>(2 * r + c)];
  }

  Complex2x2 dagger() const {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  }

  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  Complex trace() const { return m[0] + m[3]; }

  Complex2x2 inverse() const {
    const Complex d = det();
    if (std::abs(d) < 1e-300) throw NumericError("singular 2x2 matrix");
    return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
  }

  Complex2x2& operator+=(const Complex2x2& o) {
    for (int i = 0; i < 4; ++i) m[i] += o.m[i];
    return *this;
  }
  Complex2x2& operator-=(const Complex2x2& o) {
    for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
    return *this;
  }
  Complex2x2& operator*=(Complex s) {
    for (auto& e : m) e *= s;
    return *this;
  }
};

inline Complex2x2 operator+(Complex2x2 a, const Complex2x2& b) { return a += b; }
inline Complex2x2 operator-(Complex2x2 a, const Complex2x2& b) { return a -= b; }
inline Complex2x2 operator*(Complex s, Complex2x2 a) { return a *= s; }
inline Complex2x2 operator*(Complex2x2 a, Complex s) { return a *= s; }

inline Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b) {
  return {a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
          a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]};
}

inline double max_abs(const Complex2x2& a) {
  double r = 0.0;
  for (const auto& e : a.m) r = std::max(r, std::abs(e));
  return r;
}

inline double max_abs_diff(const Complex2x2& a, const Complex2x2& b) {
  double r = 0.0;
  for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
  return r;
}

inline bool all_finite(const Complex2x2& a) {
  for (const auto& e : a.m) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  }
  return true;
}

}  // namespace qcgeo
