#include "qcgeo/propagate.hpp"

#include <cmath>
#include <functional>

#include "qcgeo/ode.hpp"
#include "qcgeo/quadrature.hpp"

namespace qcgeo {

namespace {

void check_fields(const FieldTrajectory& fields) {
  const std::size_t n = fields.times.size();
  if (n < 2 || fields.fields.size() != n) {
    throw InputError("field trajectory needs >= 2 consistent samples");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(fields.times[i + 1] > fields.times[i])) {
      throw InputError("field trajectory times must be strictly increasing");
    }
  }
  // sampling density precondition: >= 1000 samples per unit of int |f| dt
  std::vector<double> norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = fields.fields[i].f;
    norm[i] = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
  }
  const double action = integrate_samples(fields.times, norm);
  if (static_cast<double>(n) < 1000.0 * action) {
    throw InputError("field trajectory sampled too coarsely for propagation");
  }
}

// generator components of H for one interpolated field vector
struct HamCoeffs {
  // H = [[h00, h01], [h10, h11]] assembled directly per group
  Complex2x2 at(GroupTag tag, const std::array<double, 3>& f) const {
    Complex2x2 h;
    if (tag == GroupTag::SU2) {
      // f . sigma
      h(0, 0) = Complex(f[2], 0.0);
      h(0, 1) = Complex(f[0], -f[1]);
      h(1, 0) = Complex(f[0], f[1]);
      h(1, 1) = Complex(-f[2], 0.0);
    } else {
      // f0 K0 + f1 K1 + f2 K2 = [[f0/2, (i f1 + f2)/2], [(i f1 - f2)/2, -f0/2]]
      h(0, 0) = Complex(0.5 * f[0], 0.0);
      h(0, 1) = Complex(0.5 * f[2], 0.5 * f[1]);
      h(1, 0) = Complex(-0.5 * f[2], 0.5 * f[1]);
      h(1, 1) = Complex(-0.5 * f[0], 0.0);
    }
    return h;
  }
};

// segment-local RHS: fields vary linearly between the two bounding samples,
// so the integrand is smooth inside each segment
template <std::size_t N>
struct SchrodingerRhs {
  GroupTag tag;
  double t0, t1;
  std::array<double, 3> f0, f1;

  void operator()(double t, const std::array<double, N>& y,
                  std::array<double, N>& dy) const {
    const double s = (t - t0) / (t1 - t0);
    const std::array<double, 3> f{f0[0] + s * (f1[0] - f0[0]),
                                  f0[1] + s * (f1[1] - f0[1]),
                                  f0[2] + s * (f1[2] - f0[2])};
    const Complex2x2 h = HamCoeffs{}.at(tag, f);
    // columns of y: interleaved (re, im) pairs; dX/dt = -i H X column-wise
    constexpr std::size_t cols = N / 4;
    for (std::size_t c = 0; c < cols; ++c) {
      const Complex x0(y[4 * c + 0], y[4 * c + 1]);
      const Complex x1(y[4 * c + 2], y[4 * c + 3]);
      const Complex d0 = Complex(0, -1) * (h.m[0] * x0 + h.m[1] * x1);
      const Complex d1 = Complex(0, -1) * (h.m[2] * x0 + h.m[3] * x1);
      dy[4 * c + 0] = d0.real();
      dy[4 * c + 1] = d0.imag();
      dy[4 * c + 2] = d1.real();
      dy[4 * c + 3] = d1.imag();
    }
  }
};

template <std::size_t N>
std::array<double, N> propagate_samples(
    const FieldTrajectory& fields, std::array<double, N> y,
    const EvolveOptions& opt, const std::function<void(std::size_t, const std::array<double, N>&)>& on_sample) {
  OdeOptions ode;
  ode.rtol = opt.rtol;
  ode.atol = opt.atol;
  auto no_guard = [](double, const std::array<double, N>&) { return true; };
  on_sample(0, y);
  for (std::size_t k = 0; k + 1 < fields.times.size(); ++k) {
    const SchrodingerRhs<N> rhs{fields.tag, fields.times[k], fields.times[k + 1],
                                fields.fields[k].f, fields.fields[k + 1].f};
    y = rk45_integrate<N>(rhs, y, fields.times[k], fields.times[k + 1], ode, no_guard);
    on_sample(k + 1, y);
  }
  return y;
}

std::array<double, 8> from_matrix(const Complex2x2& u) {
  // column-major pairs: columns evolve independently
  return {u(0, 0).real(), u(0, 0).imag(), u(1, 0).real(), u(1, 0).imag(),
          u(0, 1).real(), u(0, 1).imag(), u(1, 1).real(), u(1, 1).imag()};
}

Complex2x2 to_matrix(const std::array<double, 8>& y) {
  Complex2x2 u;
  u(0, 0) = Complex(y[0], y[1]);
  u(1, 0) = Complex(y[2], y[3]);
  u(0, 1) = Complex(y[4], y[5]);
  u(1, 1) = Complex(y[6], y[7]);
  return u;
}

}  // namespace

OperatorEvolution evolve(const FieldTrajectory& fields, const Complex2x2& initial,
                         const EvolveOptions& opt) {
  check_fields(fields);
  OperatorEvolution out;
  out.times = fields.times;
  out.operators.resize(fields.times.size());
  propagate_samples<8>(fields, from_matrix(initial), opt,
                       [&](std::size_t i, const std::array<double, 8>& y) {
                         out.operators[i] = to_matrix(y);
                       });
  return out;
}

StateEvolution evolve(const FieldTrajectory& fields, const QuantumState& initial,
                      const EvolveOptions& opt) {
  check_fields(fields);
  StateEvolution out;
  out.times = fields.times;
  out.states.resize(fields.times.size());
  propagate_samples<4>(
      fields,
      {initial.a[0].real(), initial.a[0].imag(), initial.a[1].real(),
       initial.a[1].imag()},
      opt, [&](std::size_t i, const std::array<double, 4>& y) {
        out.states[i] = QuantumState{Complex(y[0], y[1]), Complex(y[2], y[3])};
      });
  return out;
}

double fidelity(GroupTag tag, const QuantumState& a, const QuantumState& b) {
  if (tag == GroupTag::SU2) {
    if (std::abs(state_norm(a) - 1.0) > 1e-6 || std::abs(state_norm(b) - 1.0) > 1e-6) {
      throw InputError("SU2 fidelity inputs must be normalized");
    }
    const Complex ov = std::conj(a.a[0]) * b.a[0] + std::conj(a.a[1]) * b.a[1];
    return std::norm(ov);
  }
  const double na = pseudo_norm(a), nb = pseudo_norm(b);
  if (std::abs(na + 1.0) > 1e-6 || std::abs(nb + 1.0) > 1e-6) {
    throw InputError("SU11 fidelity inputs must have pseudo-norm -1");
  }
  const Complex ov = std::conj(a.a[0]) * b.a[0] - std::conj(a.a[1]) * b.a[1];
  return std::norm(ov) / (std::abs(na) * std::abs(nb));
}

PropagationReport verify_trajectory(const Trajectory& traj, const EvolveOptions& opt) {
  validate_trajectory(traj, /*require_interior_points=*/false);
  const FieldTrajectory fields = fields_along(traj);
  const Complex2x2 u_start = evolution_operator(traj.tag, traj.points.front());
  const Complex2x2 sz = generator(GroupTag::SU2, 2);

  PropagationReport report;
  propagate_samples<8>(
      fields, from_matrix(Complex2x2::identity()), opt,
      [&](std::size_t i, const std::array<double, 8>& y) {
        const Complex2x2 u_num = to_matrix(y);
        // propagation starts from the identity; the intended operator path is
        // U(t) U(0)^{-1}, so compare after right-multiplying by U(0)
        const Complex2x2 intended = evolution_operator(traj.tag, traj.points[i]);
        report.max_param_deviation = std::max(
            report.max_param_deviation, max_abs_diff(u_num * u_start, intended));
        if (traj.tag == GroupTag::SU2) {
          report.unitarity_drift =
              std::max(report.unitarity_drift,
                       max_abs_diff(u_num.dagger() * u_num, Complex2x2::identity()));
        } else {
          report.pseudo_norm_drift = std::max(
              report.pseudo_norm_drift, max_abs_diff(u_num.dagger() * sz * u_num, sz));
        }
        if (i + 1 == traj.size()) {
          const QuantumState achieved =
              apply(u_num, state_from_params(traj.tag, traj.points.front()));
          const QuantumState target = state_from_params(traj.tag, traj.points.back());
          report.final_infidelity =
              std::max(0.0, 1.0 - fidelity(traj.tag, achieved, target));
        }
      });
  return report;
}

}  // namespace qcgeo
