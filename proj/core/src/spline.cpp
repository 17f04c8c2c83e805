#include "qcgeo/spline.hpp"

#include <algorithm>
#include <cmath>

namespace qcgeo {

CubicSpline CubicSpline::fit(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  if (n < 3) throw InputError("cubic spline needs at least 3 knots");
  if (y.size() != n) throw InputError("spline x/y length mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x[i + 1] > x[i])) throw InputError("spline knots must be strictly increasing");
  }
  // tridiagonal system for interior second derivatives, natural ends
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  b[0] = b[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x[i] - x[i - 1];
    const double hr = x[i + 1] - x[i];
    a[i] = hl;
    b[i] = 2.0 * (hl + hr);
    c[i] = hr;
    d[i] = 6.0 * ((y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double f = a[i] / b[i - 1];
    b[i] -= f * c[i - 1];
    d[i] -= f * d[i - 1];
  }
  std::vector<double> m(n, 0.0);
  m[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    m[i] = (d[i] - c[i] * m[i + 1]) / b[i];
  }
  CubicSpline s;
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  s.m_ = std::move(m);
  return s;
}

std::size_t CubicSpline::segment(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

}  // namespace qcgeo
