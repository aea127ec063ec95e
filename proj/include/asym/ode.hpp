#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include "asym/errors.hpp"

namespace asym::ode {

struct Options {
  double rtol = 1e-9;
  double atol = 1e-12;
  std::size_t max_steps = 2'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double local_error_sum = 0.0;  // sum of absolute local error estimates over accepted steps
};

/// Adaptive Dormand-Prince 5(4) for complex state vectors, with FSAL and
/// standard PI-free step control. The step size carries over between calls to
/// `advance`, so integrating through a list of breakpoints costs nothing extra.
template <std::size_t N>
class DormandPrince {
 public:
  using State = std::array<std::complex<double>, N>;

  explicit DormandPrince(Options opts = {}) : opts_(opts) {}

  const Stats& stats() const { return stats_; }

  /// Integrates y from t to t_end. `observer(t, y)` runs after every accepted step
  /// and may throw to abort.
  template <class Rhs, class Observer>
  void advance(Rhs&& f, double& t, double t_end, State& y, Observer&& observer) {
    if (t_end == t) return;
    const double dir = t_end > t ? 1.0 : -1.0;
    State k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
    f(t, y, k1);
    ++stats_.evaluations;
    if (h_ <= 0.0) h_ = initial_step(y, k1, std::abs(t_end - t));

    std::size_t steps = 0;
    while (dir * (t_end - t) > 0.0) {
      if (++steps > opts_.max_steps) {
        throw IntegrationFailure("integrator exceeded " + std::to_string(opts_.max_steps) +
                                 " steps at t = " + std::to_string(t));
      }
      double h = std::min(h_, std::abs(t_end - t));
      const bool last = h >= std::abs(t_end - t);
      const double hs = dir * h;

      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
      f(t + c2 * hs, tmp, k2);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
      f(t + c3 * hs, tmp, k3);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      f(t + c4 * hs, tmp, k4);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      f(t + c5 * hs, tmp, k5);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      f(t + hs, tmp, k6);
      for (std::size_t i = 0; i < N; ++i)
        ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      const double t_new = last ? t_end : t + hs;
      f(t_new, ynew, k7);
      stats_.evaluations += 6;

      double err = 0.0;
      double abs_err = 0.0;
      bool finite = true;
      for (std::size_t i = 0; i < N; ++i) {
        const std::complex<double> e =
            hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale =
            opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        const double ae = std::abs(e);
        if (!std::isfinite(ae) || !std::isfinite(std::abs(ynew[i]))) {
          finite = false;
          break;
        }
        err = std::max(err, ae / scale);
        abs_err = std::max(abs_err, ae);
      }
      if (!finite) {
        throw IntegrationFailure("non-finite state at t = " + std::to_string(t));
      }

      if (err <= 1.0) {
        t = t_new;
        y = ynew;
        k1 = k7;
        ++stats_.accepted;
        stats_.local_error_sum += abs_err;
        observer(t, y);
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // a clipped final step should not shrink the step carried into the next call
        if (!last) h_ = h * fac;
        else h_ = std::max(h_, h * fac);
      } else {
        ++stats_.rejected;
        h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        if (h_ <= 1e-14 * std::max(1.0, std::abs(t))) {
          throw IntegrationFailure("step size underflow at t = " + std::to_string(t) +
                                   "; tolerance cannot be met");
        }
      }
    }
  }

  template <class Rhs>
  void advance(Rhs&& f, double& t, double t_end, State& y) {
    advance(std::forward<Rhs>(f), t, t_end, y, [](double, const State&) {});
  }

 private:
  double initial_step(const State& y, const State& dy, double span) const {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opts_.atol + opts_.rtol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(dy[i]) / sc);
    }
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    return std::min(h, span);
  }

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Options opts_;
  Stats stats_;
  double h_ = 0.0;
};

}  // namespace asym::ode
