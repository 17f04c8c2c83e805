#pragma once

#include <span>
#include <vector>

namespace qcgeo {

/// Integral of sampled data on a (possibly nonuniform) strictly increasing
/// grid. Each interval integrates the quadratic fitted through neighbouring
/// triples (averaged where two triples overlap), which is 4th-order accurate
/// on smooth data and symmetric under time reversal.
double integrate_samples(std::span<const double> t, std::span<const double> f);

/// Running integral with a value at every sample; front() == 0 and
/// back() == integrate_samples(t, f).
std::vector<double> cumulative_integral(std::span<const double> t,
                                        std::span<const double> f);

}  // namespace qcgeo
