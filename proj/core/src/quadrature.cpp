#include "qcgeo/quadrature.hpp"

#include "qcgeo/errors.hpp"

namespace qcgeo {

namespace {

// integral over [a, b] of the quadratic through (x0,f0), (x1,f1), (x2,f2)
double quad_fit_integral(double a, double b, double x0, double f0, double x1,
                         double f1, double x2, double f2) {
  const double d1 = (f1 - f0) / (x1 - x0);
  const double d2 = ((f2 - f1) / (x2 - x1) - d1) / (x2 - x0);
  // p(x) = f0 + d1 (x - x0) + d2 (x - x0)(x - x1)
  auto antider = [&](double x) {
    const double u = x - x0;
    // int (x-x0)(x-x1) dx = x^3/3 - (x0+x1) x^2/2 + x0 x1 x
    const double cubic = x * x * x / 3.0 - (x0 + x1) * x * x / 2.0 + x0 * x1 * x;
    return f0 * x + d1 * u * u / 2.0 + d2 * cubic;
  };
  return antider(b) - antider(a);
}

}  // namespace

std::vector<double> cumulative_integral(std::span<const double> t,
                                        std::span<const double> f) {
  const std::size_t n = t.size();
  if (n < 2) throw InputError("quadrature needs at least 2 samples");
  if (f.size() != n) throw InputError("quadrature times/values length mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(t[i + 1] > t[i])) throw InputError("quadrature times must be strictly increasing");
  }
  std::vector<double> cum(n, 0.0);
  if (n == 2) {
    cum[1] = 0.5 * (f[0] + f[1]) * (t[1] - t[0]);
    return cum;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double piece = 0.0;
    int used = 0;
    if (i >= 1) {
      piece += quad_fit_integral(t[i], t[i + 1], t[i - 1], f[i - 1], t[i], f[i],
                                 t[i + 1], f[i + 1]);
      ++used;
    }
    if (i + 2 < n) {
      piece += quad_fit_integral(t[i], t[i + 1], t[i], f[i], t[i + 1], f[i + 1],
                                 t[i + 2], f[i + 2]);
      ++used;
    }
    cum[i + 1] = cum[i] + piece / used;
  }
  return cum;
}

double integrate_samples(std::span<const double> t, std::span<const double> f) {
  return cumulative_integral(t, f).back();
}

}  // namespace qcgeo
