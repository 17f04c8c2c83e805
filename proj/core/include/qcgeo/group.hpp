#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qcgeo/errors.hpp"

namespace qcgeo {

/// Which dynamical symmetry a problem lives on.
enum class GroupTag { SU2, SU11 };

inline const char* group_name(GroupTag tag) {
  return tag == GroupTag::SU2 ? "su2" : "su11";
}

/// Guard band around the coordinate singularities (theta in {0, pi}, rho = 0).
/// Solver-facing operations reject points inside the band; csc/coth factors in
/// the geodesic equations blow up there.
inline constexpr double kSingularGuard = 1e-4;

/// A point on the 3-parameter control manifold, coordinate order (c1, phi, eta).
/// c1 is theta for SU2, rho for SU11; eta is the global phase.
struct GroupParams {
  double c1 = 0.0;
  double phi = 0.0;
  double eta = 0.0;
};

/// Difficulty coefficients of the three drive directions:
/// (I_x, I_y, I_z) for SU2, (I_0, I_1, I_2) for SU11.
struct AnisotropyWeights {
  std::array<double, 3> w{1.0, 1.0, 1.0};

  static AnisotropyWeights isotropic() { return AnisotropyWeights{}; }

  bool is_isotropic() const { return w[0] == w[1] && w[1] == w[2]; }

  void validate() const {
    for (double wi : w) {
      if (!(wi > 0.0) || !std::isfinite(wi)) {
        throw DomainError("anisotropy weights must be finite and > 0");
      }
    }
  }
};

/// True if c1 lies in the closed coordinate range (theta in [0, pi], rho >= 0).
inline bool in_closed_domain(GroupTag tag, double c1) {
  if (!std::isfinite(c1)) return false;
  if (tag == GroupTag::SU2) return c1 >= 0.0 && c1 <= std::numbers::pi;
  return c1 >= 0.0;
}

/// True if c1 stays clear of the singular boundaries by at least `band`.
inline bool is_interior(GroupTag tag, double c1, double band = kSingularGuard) {
  if (!std::isfinite(c1)) return false;
  if (tag == GroupTag::SU2) return c1 > band && c1 < std::numbers::pi - band;
  return c1 > band;
}

inline void require_interior(GroupTag tag, const GroupParams& p,
                             double band = kSingularGuard) {
  if (!std::isfinite(p.phi) || !std::isfinite(p.eta)) {
    throw DomainError("non-finite coordinate");
  }
  if (!is_interior(tag, p.c1, band)) {
    throw DomainError(std::string("coordinate on singular boundary: c1 = ") +
                      std::to_string(p.c1) + " for group " + group_name(tag));
  }
}

}  // namespace qcgeo
