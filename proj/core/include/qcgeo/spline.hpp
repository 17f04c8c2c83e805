#pragma once

#include <vector>

#include "qcgeo/errors.hpp"

namespace qcgeo {

/// Natural cubic spline through strictly increasing knots. Evaluation outside
/// the knot range extrapolates the boundary polynomial.
class CubicSpline {
 public:
  CubicSpline() = default;
  static CubicSpline fit(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

}  // namespace qcgeo
