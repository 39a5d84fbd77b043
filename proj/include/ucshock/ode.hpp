#pragma once

// Adaptive Dormand-Prince 5(4) integrator for planar autonomous systems.

#include <algorithm>
#include <array>
#include <cmath>

namespace ucshock::ode {

using Vec2 = std::array<double, 2>;

struct Tolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_max = 0.5;
  long max_steps = 2'000'000;
};

// One accepted step, handed to the observer: states and derivatives at both
// ends so the observer can build a cubic Hermite interpolant.
struct StepView {
  double t0, t1;
  Vec2 y0, y1;
  Vec2 f0, f1;

  Vec2 interpolate(double t) const {
    const double h = t1 - t0;
    const double th = (t - t0) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    Vec2 y;
    for (int k = 0; k < 2; ++k) y[k] = h00 * y0[k] + h10 * h * f0[k] + h01 * y1[k] + h11 * h * f1[k];
    return y;
  }
};

enum class StopReason { ObserverStopped, ReachedEnd, StepSizeUnderflow, MaxSteps };

struct Outcome {
  StopReason reason;
  double t;
  Vec2 y;
  long steps;
};

// Integrates y' = field(y) from t = 0 to t_end.  observer(const StepView&)
// returns true to stop after that step.
template <class Field, class Observer>
Outcome integrate(Field&& field, Vec2 y, double t_end, const Tolerances& tol, Observer&& observer) {
  // Dormand-Prince tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;

  auto axpy = [](const Vec2& base, std::initializer_list<std::pair<double, const Vec2*>> terms,
                 double h) {
    Vec2 out = base;
    for (const auto& [coef, k] : terms) {
      out[0] += h * coef * (*k)[0];
      out[1] += h * coef * (*k)[1];
    }
    return out;
  };

  double t = 0.0;
  double h = std::min(tol.h_init, tol.h_max);
  Vec2 k1 = field(y);
  long steps = 0;
  while (t < t_end) {
    if (steps >= tol.max_steps) return {StopReason::MaxSteps, t, y, steps};
    h = std::min({h, tol.h_max, t_end - t});
    const Vec2 k2 = field(axpy(y, {{a21, &k1}}, h));
    const Vec2 k3 = field(axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    const Vec2 k4 = field(axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    const Vec2 k5 = field(axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    const Vec2 k6 =
        field(axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    const Vec2 y_new = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    const Vec2 k7 = field(y_new);

    double err = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double e =
          h * (e1 * k1[k] + e3 * k3[k] + e4 * k4[k] + e5 * k5[k] + e6 * k6[k] + e7 * k7[k]);
      const double scale = tol.atol + tol.rtol * std::max(std::abs(y[k]), std::abs(y_new[k]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      const StepView view{t, t + h, y, y_new, k1, k7};
      t += h;
      y = y_new;
      k1 = k7;
      ++steps;
      if (observer(view)) return {StopReason::ObserverStopped, t, y, steps};
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.9);
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        return {StopReason::StepSizeUnderflow, t, y, steps};
      }
    }
  }
  return {StopReason::ReachedEnd, t, y, steps};
}

}  // namespace ucshock::ode
