#pragma once

// Scalar Dormand-Prince 5(4) with FSAL and a fixed step-acceptance rule.

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsaxi {

struct DopriOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double initial_step = 1e-2;
  double max_step = 0.5;
  double safety = 0.9;
  double fac_min = 0.2;
  double fac_max = 5.0;
  long max_steps = 1'000'000;
};

enum class DopriStatus { Done, Escaped, StepUnderflow, TooManySteps };

struct DopriResult {
  DopriStatus status = DopriStatus::Done;
  double t = 0.0;  // last accepted time
  double y = 0.0;  // last accepted value
  long accepted = 0;
  long rejected = 0;
};

/// Integrates y' = f(t, y) from t0 to t1 (either direction). `on_step(t, y, f)` is called
/// for the initial point and every accepted step. `escaped(y)` aborts the run.
template <class Rhs, class OnStep, class Escaped>
DopriResult dopri5(Rhs&& f, double t0, double y0, double t1, const DopriOptions& opt,
                   OnStep&& on_step, Escaped&& escaped) {
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
  // b - bhat
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  DopriResult res;
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  double y = y0;
  double k1 = f(t, y);
  on_step(t, y, k1);
  res.t = t;
  res.y = y;
  if (t0 == t1) return res;

  double h = dir * std::min(opt.initial_step, std::abs(t1 - t0));
  bool last_rejected = false;

  while (dir * (t1 - t) > 0.0) {
    if (res.accepted + res.rejected >= opt.max_steps) {
      res.status = DopriStatus::TooManySteps;
      return res;
    }
    if (std::abs(h) < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      res.status = DopriStatus::StepUnderflow;
      return res;
    }
    bool clipped = false;
    if (dir * (t + 1.000001 * h - t1) >= 0.0) {
      h = t1 - t;
      clipped = true;
    }

    const double k2 = f(t + c2 * h, y + h * a21 * k1);
    const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(t + h, y_new);
    const double err_abs = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = opt.atol + opt.rtol * std::max(std::abs(y), std::abs(y_new));
    double err = std::abs(err_abs) / sc;
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      t = clipped ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ++res.accepted;
      on_step(t, y, k1);
      res.t = t;
      res.y = y;
      if (escaped(y)) {
        res.status = DopriStatus::Escaped;
        return res;
      }
      double fac = err == 0.0 ? opt.fac_max : opt.safety * std::pow(err, -0.2);
      fac = std::clamp(fac, opt.fac_min, last_rejected ? 1.0 : opt.fac_max);
      h = dir * std::min(std::abs(h) * fac, opt.max_step);
      last_rejected = false;
    } else {
      ++res.rejected;
      double fac = std::isinf(err) ? opt.fac_min : opt.safety * std::pow(err, -0.2);
      fac = std::clamp(fac, opt.fac_min, 1.0);
      h *= fac;
      last_rejected = true;
    }
  }
  return res;
}

}  // namespace nsaxi
