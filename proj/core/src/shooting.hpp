// internal solver utilities shared by the geodesic and phase_opt modules
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "qcgeo/errors.hpp"

namespace qcgeo::detail {

template <int K>
double inf_norm(const std::array<double, K>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <int K>
void solve_linear(std::array<std::array<double, K>, K> a, std::array<double, K>& b) {
  for (int col = 0; col < K; ++col) {
    int piv = col;
    for (int r = col + 1; r < K; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)])) {
        piv = r;
      }
    }
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
    const double d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (!(std::abs(d) > 1e-300)) throw NumericError("singular shooting Jacobian");
    for (int r = col + 1; r < K; ++r) {
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      for (int c = col; c < K; ++c) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      }
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  for (int r = K - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < K; ++c) {
      s -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
           b[static_cast<std::size_t>(c)];
    }
    b[static_cast<std::size_t>(r)] =
        s / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
}

template <int K>
struct ShootOutcome {
  std::array<double, K> v0{};
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iters = 0;
};

/// Newton iteration on the shooting unknowns with a forward-difference
/// Jacobian and residual backtracking. ResidualFn maps a guess to the endpoint
/// mismatch and may throw (singular exit, blow-up); exceptions from the
/// initial evaluation propagate, ones during backtracking count as a failed
/// trial step.
template <int K, typename ResidualFn>
ShootOutcome<K> newton_shoot(ResidualFn&& residual_of, std::array<double, K> v,
                             double tol, int max_iters, double fd_eps) {
  ShootOutcome<K> out;
  std::array<double, K> r = residual_of(v);
  double rn = inf_norm<K>(r);
  for (int it = 0; it < max_iters; ++it) {
    out.iters = it;
    if (rn < tol) break;
    std::array<std::array<double, K>, K> jac{};
    for (int j = 0; j < K; ++j) {
      std::array<double, K> vp = v;
      const double eps = fd_eps * std::max(1.0, std::abs(v[static_cast<std::size_t>(j)]));
      vp[static_cast<std::size_t>(j)] += eps;
      const std::array<double, K> rp = residual_of(vp);
      for (int i = 0; i < K; ++i) {
        jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            (rp[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]) / eps;
      }
    }
    std::array<double, K> delta = r;
    for (auto& d : delta) d = -d;
    solve_linear<K>(jac, delta);
    double lambda = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 8; ++bt) {
      std::array<double, K> vt = v;
      for (int i = 0; i < K; ++i) {
        vt[static_cast<std::size_t>(i)] += lambda * delta[static_cast<std::size_t>(i)];
      }
      bool eval_ok = true;
      std::array<double, K> rt{};
      try {
        rt = residual_of(vt);
      } catch (const Error&) {
        eval_ok = false;
      }
      if (eval_ok && inf_norm<K>(rt) < rn) {
        v = vt;
        r = rt;
        rn = inf_norm<K>(r);
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  out.v0 = v;
  out.residual = rn;
  out.converged = rn < tol;
  return out;
}

inline constexpr double kInvPhi = 0.6180339887498949;

template <typename Fn>
std::pair<double, double> golden_min(Fn&& fn, double a, double b, double tol) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

inline std::vector<double> uniform_grid(double t0, double t1, int steps) {
  std::vector<double> ts(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    ts[static_cast<std::size_t>(i)] =
        t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  ts.back() = t1;
  return ts;
}

}  // namespace qcgeo::detail
