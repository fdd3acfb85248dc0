#pragma once

// Reference solutions computed independently of the library.

#include <cmath>
#include <numbers>

namespace oracle {

// Sine Burgers u(t,x) = sin(xi) with xi + t sin(xi) = x, t < 1. The map
// xi -> xi + t sin xi is increasing, so plain bisection on [x - t, x + t]
// always brackets the root.
inline double sine_burgers(double t, double x) {
  double lo = x - t, hi = x + t;
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid + t * std::sin(mid) - x < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::sin(0.5 * (lo + hi));
}

// Exact flow of u_t = -eps^2 u_xxx on sin(k x): sin(k x + eps^2 k^3 t).
inline double airy_mode(double eps, double k, double t, double x) {
  return std::sin(k * x + eps * eps * k * k * k * t);
}

}  // namespace oracle
