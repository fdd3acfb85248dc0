#include <cmath>
#include <stdexcept>
#include <string>

#include "kpsldg/sldg_burgers.hpp"

namespace kpsldg {

namespace {

// Ascending series; used only where the terms decrease from the first one on.
double bessel_series(int k, double z) {
  const double q = -0.25 * z * z;
  double term = 1.0;
  for (int m = 1; m <= k; ++m) term *= 0.5 * z / m;
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (m * static_cast<double>(m + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence normalised by J_0 + 2 sum_m J_2m = 1.
double bessel_miller(int k, double z) {
  constexpr double big = 1e250;
  const double top = std::max<double>(k, z);
  int start = 2 * ((static_cast<int>(top) + static_cast<int>(std::sqrt(160.0 * top)) + 20) / 2);
  double next = 0.0;  // J_{n+1}
  double cur = 1e-300;  // J_n, arbitrary seed
  double result = 0.0;
  double norm = 0.0;
  for (int n = start; n > 0; --n) {
    const double prev = (2.0 * n / z) * cur - next;  // J_{n-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > big) {
      cur /= big;
      next /= big;
      result /= big;
      norm /= big;
    }
    const int idx = n - 1;
    if (idx == k) result = cur;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
  }
  norm += cur;  // J_0
  return result / norm;
}

}  // namespace

double bessel_j(int k, double z) {
  if (k < 0 || k > 300 || !(std::abs(z) <= 300.0))
    throw std::invalid_argument("bessel_j: need 0 <= k <= 300 and |z| <= 300 (k=" +
                                std::to_string(k) + ")");
  if (z == 0.0) return k == 0 ? 1.0 : 0.0;
  if (z < 0.0) return (k % 2 == 0 ? 1.0 : -1.0) * bessel_j(k, -z);
  if (0.25 * z * z <= 0.5 * (k + 1)) return bessel_series(k, z);
  return bessel_miller(k, z);
}

double burgers_sine_exact(double t, double x, int n_terms) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("burgers_sine_exact: t must lie in (0,1)");
  if (n_terms < 1) throw std::invalid_argument("burgers_sine_exact: n_terms must be >= 1");
  double sum = 0.0;
  for (int k = 1; k <= n_terms; ++k) {
    const double kt = k * t;
    sum += -2.0 * bessel_j(k, -kt) / kt * std::sin(k * x);
  }
  return sum;
}

}  // namespace kpsldg
