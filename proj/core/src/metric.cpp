#include "qcgeo/metric.hpp"

#include <cmath>

#include "qcgeo/quadrature.hpp"

namespace qcgeo {

std::array<std::array<double, 3>, 3> MetricTensor::inverse() const {
  const auto& a = g;
  std::array<std::array<double, 3>, 3> inv{};
  const double c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  const double c01 = a[1][2] * a[2][0] - a[1][0] * a[2][2];
  const double c02 = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  const double det = a[0][0] * c00 + a[0][1] * c01 + a[0][2] * c02;
  if (!(std::abs(det) > 1e-300)) throw NumericError("metric tensor not invertible");
  inv[0][0] = c00 / det;
  inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
  inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
  inv[1][0] = c01 / det;
  inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
  inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
  inv[2][0] = c02 / det;
  inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
  inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
  return inv;
}

bool MetricTensor::positive_definite() const {
  // Cholesky with small relative tolerance
  std::array<std::array<double, 3>, 3> l{};
  for (int j = 0; j < 3; ++j) {
    double d = g[j][j];
    for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (!(d > 0.0)) return false;
    l[j][j] = std::sqrt(d);
    for (int i = j + 1; i < 3; ++i) {
      double s = g[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return true;
}

MetricTensor metric_at(GroupTag tag, const AnisotropyWeights& weights,
                       const GroupParams& point) {
  weights.validate();
  if (!in_closed_domain(tag, point.c1) || !std::isfinite(point.phi)) {
    throw DomainError("metric point outside coordinate domain");
  }
  const double w0 = weights.w[0] * weights.w[0];
  const double w1 = weights.w[1] * weights.w[1];
  const double w2 = weights.w[2] * weights.w[2];
  const double cp = std::cos(point.phi), sp = std::sin(point.phi);
  MetricTensor m;
  auto& g = m.g;
  if (tag == GroupTag::SU2) {
    // weights (I_x, I_y, I_z)
    const double ct = std::cos(point.c1), st = std::sin(point.c1);
    g[2][2] = w2 * ct * ct + w0 * cp * cp * st * st + w1 * st * st * sp * sp;
    g[0][0] = 0.25 * (w1 * cp * cp + w0 * sp * sp);
    g[1][1] = 0.25 * w2;
    g[0][2] = g[2][0] = 0.5 * (w1 - w0) * cp * sp * st;
    g[1][2] = g[2][1] = 0.5 * w2 * ct;
  } else {
    // weights (I_0, I_1, I_2)
    const double ch = std::cosh(point.c1), sh = std::sinh(point.c1);
    g[2][2] = w0 * ch * ch + w1 * cp * cp * sh * sh + w2 * sh * sh * sp * sp;
    g[0][0] = 0.25 * (w2 * cp * cp + w1 * sp * sp);
    g[1][1] = 0.25 * w0;
    g[0][2] = g[2][0] = 0.5 * (w2 - w1) * cp * sp * sh;
    g[1][2] = g[2][1] = 0.5 * w0 * ch;
  }
  g[0][1] = g[1][0] = 0.0;
  return m;
}

ChristoffelSymbols christoffel_numeric(const MetricFn& metric_fn,
                                       const GroupParams& point, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference width must be > 0");
  auto shifted = [&](int k, double delta) {
    GroupParams p = point;
    (k == 0 ? p.c1 : (k == 1 ? p.phi : p.eta)) += delta;
    return metric_fn(p);
  };
  // dg[k][i][j] = d g_ij / d x_k, central differences
  std::array<MetricTensor, 3> plus, minus;
  for (int k = 0; k < 3; ++k) {
    plus[static_cast<std::size_t>(k)] = shifted(k, h);
    minus[static_cast<std::size_t>(k)] = shifted(k, -h);
  }
  double dg[3][3][3];
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        dg[k][i][j] = (plus[static_cast<std::size_t>(k)].g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                       minus[static_cast<std::size_t>(k)].g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                      (2.0 * h);
      }
    }
  }
  const auto ginv = metric_fn(point).inverse();
  ChristoffelSymbols out;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      for (int n = nu; n < 3; ++n) {
        double s = 0.0;
        for (int m = 0; m < 3; ++m) {
          s += ginv[static_cast<std::size_t>(mu)][static_cast<std::size_t>(m)] *
               (dg[n][m][nu] + dg[nu][m][n] - dg[m][nu][n]);
        }
        s *= 0.5;
        out.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)][static_cast<std::size_t>(n)] = s;
        out.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(n)][static_cast<std::size_t>(nu)] = s;
      }
    }
  }
  return out;
}

ChristoffelSymbols christoffel_analytic(GroupTag tag, const GroupParams& point) {
  require_interior(tag, point, 0.0);
  ChristoffelSymbols out;
  auto set = [&](int mu, int nu, int n, double v) {
    out.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)][static_cast<std::size_t>(n)] = v;
    out.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(n)][static_cast<std::size_t>(nu)] = v;
  };
  // coordinate indices: 0 = c1, 1 = phi, 2 = eta
  if (tag == GroupTag::SU2) {
    const double st = std::sin(point.c1), ct = std::cos(point.c1);
    const double csc = 1.0 / st, cot = ct / st;
    set(0, 1, 2, st);           // Gamma^theta_{phi eta}
    set(1, 0, 2, -csc);         // Gamma^phi_{theta eta}
    set(1, 0, 1, 0.5 * cot);    // Gamma^phi_{theta phi}
    set(2, 0, 2, 0.5 * cot);    // Gamma^eta_{theta eta}
    set(2, 0, 1, -0.25 * csc);  // Gamma^eta_{theta phi}
  } else {
    const double sh = std::sinh(point.c1), ch = std::cosh(point.c1);
    const double ch2 = std::cosh(2.0 * point.c1), sh2 = std::sinh(2.0 * point.c1);
    const double csch = 1.0 / sh, coth = ch / sh;
    set(0, 2, 2, -4.0 * sh2);             // Gamma^rho_{eta eta}
    set(0, 1, 2, -sh);                    // Gamma^rho_{phi eta}
    set(1, 0, 2, -(2.0 + ch2) * csch);    // Gamma^phi_{rho eta}
    set(1, 0, 1, -0.5 * coth);            // Gamma^phi_{rho phi}
    set(2, 0, 2, 1.5 * coth);             // Gamma^eta_{rho eta}
    set(2, 0, 1, 0.25 * csch);            // Gamma^eta_{rho phi}
  }
  return out;
}

double cost_rate(GroupTag tag, const AnisotropyWeights& weights,
                 const GroupParams& point, const std::array<double, 3>& velocity) {
  const double q = metric_at(tag, weights, point).quad(velocity);
  if (q < -1e-12) throw NumericError("negative cost-rate radicand (metric not PD)");
  return std::sqrt(std::max(q, 0.0));
}

double trajectory_length(const Trajectory& traj) {
  validate_trajectory(traj, /*require_interior_points=*/false);
  const Trajectory t = with_velocities(traj);
  std::vector<double> rate(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    rate[i] = cost_rate(t.tag, t.weights, t.points[i], t.velocities[i]);
  }
  return integrate_samples(t.times, rate);
}

}  // namespace qcgeo
