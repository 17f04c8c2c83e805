#pragma once

#include <array>
#include <functional>

#include "qcgeo/group.hpp"
#include "qcgeo/trajectory.hpp"

namespace qcgeo {

/// Symmetric 3x3 cost metric over coordinate order (c1, phi, eta).
/// The (c1, phi) component vanishes identically for both groups.
struct MetricTensor {
  std::array<std::array<double, 3>, 3> g{};

  double quad(const std::array<double, 3>& v) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        s += g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      }
    }
    return s;
  }

  std::array<std::array<double, 3>, 3> inverse() const;

  /// Cholesky test for positive definiteness.
  bool positive_definite() const;
};

struct ChristoffelSymbols {
  // gamma[mu][nu][n], symmetric in the lower pair (nu, n)
  std::array<std::array<std::array<double, 3>, 3>, 3> gamma{};
};

using MetricFn = std::function<MetricTensor(const GroupParams&)>;

/// Cost metric components at a point. Points anywhere in the closed coordinate
/// range are accepted (the component formulas stay finite on the boundary);
/// points outside it are a domain error.
MetricTensor metric_at(GroupTag tag, const AnisotropyWeights& weights,
                       const GroupParams& point);

/// Gamma^mu_{nu n} = 1/2 g^{mu m} (d_n g_{m nu} + d_nu g_{m n} - d_m g_{nu n})
/// with central differences of width h applied to metric_fn.
ChristoffelSymbols christoffel_numeric(const MetricFn& metric_fn,
                                       const GroupParams& point, double h = 1e-5);

/// Closed-form symbols of the isotropic metrics. Anisotropic weights are not
/// supported (use christoffel_numeric).
ChristoffelSymbols christoffel_analytic(GroupTag tag, const GroupParams& point);

/// sqrt(v^T g v); equals the weighted field norm sqrt(sum I_i^2 B_i^2) for SU2
/// and half of sqrt(sum I_i^2 xi_i^2) for SU11.
double cost_rate(GroupTag tag, const AnisotropyWeights& weights,
                 const GroupParams& point, const std::array<double, 3>& velocity);

/// Total cost s = integral of cost_rate over the trajectory samples.
double trajectory_length(const Trajectory& traj);

}  // namespace qcgeo
