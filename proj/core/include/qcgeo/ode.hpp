#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "qcgeo/errors.hpp"

namespace qcgeo {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0 -> span/100
  double h_max = 0.0;   // 0 -> span
  long max_steps = 2'000'000;
};

namespace detail {

/// Dormand-Prince 5(4) pair with FSAL. Steps from t0 to t1 (t1 > t0), calling
/// guard(t, y) after every accepted step; a false return aborts with
/// SingularityError at that time. Rejected steps with non-finite error are
/// retried at smaller h, so singular right-hand sides fail soft.
template <std::size_t N, typename Rhs, typename Guard>
class Dopri5 {
 public:
  using State = std::array<double, N>;

  Dopri5(Rhs& rhs, Guard& guard, const OdeOptions& opt)
      : rhs_(rhs), guard_(guard), opt_(opt) {}

  void start(const State& y0, double t0, double span) {
    y_ = y0;
    t_ = t0;
    rhs_(t_, y_, k1_);
    h_ = opt_.h_init > 0.0 ? opt_.h_init : span / 100.0;
    hmax_ = opt_.h_max > 0.0 ? opt_.h_max : span;
    h_ = std::min(h_, hmax_);
    steps_ = 0;
  }

  double t() const { return t_; }
  const State& y() const { return y_; }

  /// Advances to exactly t_end.
  void advance_to(double t_end) {
    while (t_ < t_end) {
      const double h_left = t_end - t_;
      if (h_left <= std::abs(t_end) * 1e-14 + 1e-300) {
        t_ = t_end;  // remaining gap is roundoff-sized
        break;
      }
      double h = std::min(h_, h_left);
      bool hit_end = (h >= h_left);
      // attempt steps until one is accepted
      for (;;) {
        if (++steps_ > opt_.max_steps) {
          throw NumericError("ODE integrator exceeded max step count");
        }
        if (!(h > std::abs(t_) * 1e-15 + 1e-300)) {
          throw NumericError("ODE step size underflow");
        }
        const double err = try_step(h);
        if (err <= 1.0) {  // NaN fails this test and rejects the step
          t_ = hit_end ? t_end : t_ + h;
          y_ = ynew_;
          k1_ = k7_;  // FSAL
          const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
          h_ = std::min(hmax_, h * std::clamp(grow, 0.2, 5.0));
          if (!guard_(t_, y_)) {
            throw SingularityError("trajectory left the interior domain", t_);
          }
          break;
        }
        const double shrink = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
        h *= shrink;
        hit_end = false;
      }
    }
  }

 private:
  // scaled RMS error of one trial step of size h; fills ynew_, k7_
  double try_step(double h) {
    const State& y = y_;
    State yt;
    auto stage = [&](const std::array<double, 6>& a, int na) {
      const double* ks[6] = {k1_.data(), k2_.data(), k3_.data(),
                             k4_.data(), k5_.data(), k6_.data()};
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int j = 0; j < na; ++j) acc += a[static_cast<std::size_t>(j)] * ks[j][i];
        yt[i] = y[i] + h * acc;
      }
    };
    stage({1.0 / 5}, 1);
    rhs_(t_ + h / 5.0, yt, k2_);
    stage({3.0 / 40, 9.0 / 40}, 2);
    rhs_(t_ + 3.0 * h / 10.0, yt, k3_);
    stage({44.0 / 45, -56.0 / 15, 32.0 / 9}, 3);
    rhs_(t_ + 4.0 * h / 5.0, yt, k4_);
    stage({19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729}, 4);
    rhs_(t_ + 8.0 * h / 9.0, yt, k5_);
    stage({9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656}, 5);
    rhs_(t_ + h, yt, k6_);
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    for (std::size_t i = 0; i < N; ++i) {
      ynew_[i] = y[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] +
                             b5 * k5_[i] + b6 * k6_[i]);
    }
    rhs_(t_ + h, ynew_, k7_);
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    double err2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] +
                            e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
      const double scale =
          opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
      err2 += (e / scale) * (e / scale);
    }
    return std::sqrt(err2 / static_cast<double>(N));
  }

  Rhs& rhs_;
  Guard& guard_;
  OdeOptions opt_;
  State y_{}, ynew_{}, k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
  double t_ = 0.0, h_ = 0.0, hmax_ = 0.0;
  long steps_ = 0;
};

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1, returning y(t1).
/// rhs: void(double t, const State&, State& dydt)
/// guard: bool(double t, const State&), false aborts with SingularityError.
template <std::size_t N, typename Rhs, typename Guard>
std::array<double, N> rk45_integrate(Rhs&& rhs, std::array<double, N> y0, double t0,
                                     double t1, const OdeOptions& opt, Guard&& guard) {
  if (!(t1 > t0)) throw DomainError("ODE integration needs t1 > t0");
  detail::Dopri5<N, Rhs, Guard> solver(rhs, guard, opt);
  solver.start(y0, t0, t1 - t0);
  solver.advance_to(t1);
  return solver.y();
}

template <std::size_t N, typename Rhs>
std::array<double, N> rk45_integrate(Rhs&& rhs, std::array<double, N> y0, double t0,
                                     double t1, const OdeOptions& opt = {}) {
  auto guard = [](double, const std::array<double, N>&) { return true; };
  return rk45_integrate<N>(std::forward<Rhs>(rhs), y0, t0, t1, opt, guard);
}

/// Integrates over the given ascending time grid, invoking
/// observer(index, t, y) at every grid point (including the first). Grid
/// points are hit exactly, so observed states carry full integrator accuracy.
template <std::size_t N, typename Rhs, typename Guard, typename Observer>
void rk45_sample(Rhs&& rhs, const std::array<double, N>& y0,
                 std::span<const double> times, const OdeOptions& opt,
                 Guard&& guard, Observer&& observer) {
  if (times.size() < 2) throw DomainError("sampled integration needs >= 2 times");
  detail::Dopri5<N, Rhs, Guard> solver(rhs, guard, opt);
  solver.start(y0, times.front(), times.back() - times.front());
  observer(std::size_t{0}, times.front(), y0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    solver.advance_to(times[k]);
    observer(k, times[k], solver.y());
  }
}

}  // namespace qcgeo
