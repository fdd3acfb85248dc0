#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpsldg/initial_conditions.hpp"
#include "kpsldg/sldg_burgers.hpp"
#include "../common/oracles.hpp"

using namespace kpsldg;

namespace {

constexpr double kPi = std::numbers::pi;

DGField1D sine_field(int cells, int order) {
  return sample(DGGrid(0.0, 2.0 * kPi, cells, order), [](double x) { return std::sin(x); });
}

// Root of a = x - tau sin(a) by bisection.
double foot_oracle(double x, double tau) {
  double lo = x - tau - 1.0, hi = x + tau + 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (x - tau * std::sin(mid) - mid > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// J_0(1) from its power series sum_m (-1/4)^m / (m!)^2.
double j0_of_one() {
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 30; ++m) {
    term *= -0.25 / (m * m);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("predict_interfaces") {
  const DGGrid g(0.0, 1.0, 8, 3);
  const auto c = sample(g, [](double) { return 0.7; });
  const auto im = predict_interfaces(c, 0.1);
  REQUIRE(im.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(im[i].a - (g.cell_left(i) + 0.07)) < 1e-14);
    CHECK(std::abs(im[i].b - (g.cell_left(i) + g.h() + 0.07)) < 1e-14);
  }
  for (const auto& c0 : predict_interfaces(c, 0.0)) {
    CHECK(std::abs(c0.a - g.cell_left(c0.cell)) < 1e-15);
    CHECK(std::abs(c0.b - g.cell_left(c0.cell) - g.h()) < 1e-15);
  }

  const auto s = sine_field(512, 4);
  double total = 0.0;
  bool positive = true;
  for (const auto& ci : predict_interfaces(s, 0.05)) {
    positive = positive && ci.b > ci.a;
    total += ci.b - ci.a;
  }
  CHECK(positive);
  CHECK(std::abs(total - 2.0 * kPi) < 1e-12);
}

TEST_CASE("predict_interfaces rejects crossing characteristics") {
  const auto s = sine_field(64, 4);
  CHECK_THROWS_AS(predict_interfaces(s, 2.0), StepRejected);
  try {
    predict_interfaces(s, 2.0);
  } catch (const StepRejected& e) {
    CHECK(e.width() <= 0.0);
    CHECK(e.cell() >= 0);
  }
}

TEST_CASE("trace_back") {
  const DGGrid g(0.0, 2.0 * kPi, 32, 4);
  const auto c = sample(g, [](double) { return 0.4; });
  for (CharMethod m : {CharMethod::FixedPoint, CharMethod::Secant, CharMethod::Newton})
    CHECK(std::abs(trace_back(1.0, c, 0.5, {m, 1, 0.0}).alpha - 0.8) < 1e-14);

  const DGGrid one(-10.0, 10.0, 1, 2);
  const auto lin = sample(one, [](double x) { return x; });
  CHECK(std::abs(trace_back(1.0, lin, 0.5, {CharMethod::Newton, 1, 0.0}).alpha - 2.0 / 3.0) <
        1e-14);

  // odd cell count: pi is the midpoint of a cell, where the sampled sine is odd
  const auto s = sine_field(63, 4);
  for (CharMethod m : {CharMethod::FixedPoint, CharMethod::Secant, CharMethod::Newton})
    for (double tau : {0.1, 0.5, 0.9})
      CHECK(std::abs(trace_back(kPi, s, tau, {m, 10, 0.0}).alpha - kPi) < 1e-14);

  const auto fine = sine_field(256, 8);
  const double a = trace_back(1.0, fine, 0.5, {CharMethod::Secant, 10, 0.0}).alpha;
  CHECK(std::abs(a - foot_oracle(1.0, 0.5)) < 1e-12);
}

TEST_CASE("trace_back early exit") {
  const auto s = sine_field(64, 4);
  const auto r = trace_back(1.0, s, 0.1, {CharMethod::Secant, 50, 1e-14});
  CHECK(r.iterations < 50);
  CHECK_THROWS_AS(CharSolverConfig({CharMethod::Secant, 0, 0.0}).validate(), std::invalid_argument);
}

TEST_CASE("sldg_step basic properties") {
  const auto s = sine_field(64, 4);
  CHECK(inf_norm_diff(sldg_step(s, 0.0, {CharMethod::Secant, 5, 0.0}), s) < 1e-13);

  // whole-cell translation of a constant state
  const DGGrid g(0.0, 1.0, 10, 3);
  auto f = sample(g, [](double x) { return 1.0 + 0.0 * x; });
  const auto shifted = sldg_step(f, 2.0 * g.h(), {CharMethod::Secant, 5, 0.0});
  CHECK(inf_norm_diff(shifted, f) < 1e-12);
}

TEST_CASE("sldg_step against the sine solution") {
  auto f = sine_field(512, 4);
  const CharSolverConfig cfg{CharMethod::Secant, 10, 0.0};
  for (int k = 0; k < 100; ++k) f = sldg_step(f, 1e-3, cfg);
  CHECK(inf_norm_diff(f, [](double x) { return oracle::sine_burgers(0.1, x); }) <= 1e-8);
  CHECK(inf_norm_diff(f, [](double x) { return burgers_sine_exact(0.1, x, 200); }) <= 1e-8);
}

TEST_CASE("sldg_step_rows") {
  const DGGrid g(0.0, 2.0 * kPi, 32, 3);
  DGField2D f(g, 1, 0.0, 1.0);
  f.rows[0] = sine_field(32, 3);
  const CharSolverConfig cfg{CharMethod::Secant, 5, 0.0};
  CHECK(inf_norm_diff(sldg_step_rows(f, 0.1, cfg).rows[0], sldg_step(f.rows[0], 0.1, cfg)) == 0.0);

  DGField2D h(g, 4, 0.0, 1.0);
  for (auto& r : h.rows) r = sine_field(32, 3);
  const auto out = sldg_step_rows(h, 0.2, cfg);
  for (int r = 1; r < 4; ++r) CHECK(inf_norm_diff(out.rows[r], out.rows[0]) == 0.0);

  // rows with larger amplitude move their maximum farther
  const DGGrid gx(-10.0, 10.0, 401, 4);
  DGField2D p(gx, 2, 0.0, 1.0);
  const double amp[2] = {0.5, 1.0};
  for (int r = 0; r < 2; ++r)
    p.rows[r] = sample(gx, [&](double x) { return amp[r] / (std::cosh(x) * std::cosh(x)); });
  const double tau = 1e-4;
  const auto q = sldg_step_rows(p, tau, cfg);
  // argmax of the interpolant near 0 by a fine scan
  auto argmax = [](const DGField1D& f) {
    double best = -1.0, at = 0.0;
    for (int k = -4000; k <= 4000; ++k) {
      const double x = k * 2.5e-7;
      const double v = eval_dg(f, x);
      if (v > best) {
        best = v;
        at = x;
      }
    }
    return at;
  };
  for (int r = 0; r < 2; ++r) {
    const double x0 = argmax(p.rows[r]);
    const double shift = argmax(q.rows[r]) - x0;
    const double foot = trace_back(x0 + tau * amp[r], p.rows[r], tau, cfg).alpha;
    CHECK(std::abs(foot - x0) < 1e-9);
    CHECK(std::abs(shift - tau * amp[r]) <= 0.1 * tau * amp[r]);
  }
}

TEST_CASE("Bessel and series solution") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int k = 1; k < 6; ++k) CHECK(bessel_j(k, 0.0) == 0.0);
  for (int k = 1; k <= 5; ++k)
    CHECK(std::abs(bessel_j(k, -0.7) - (k % 2 ? -1.0 : 1.0) * bessel_j(k, 0.7)) < 1e-15);
  CHECK(std::abs(bessel_j(0, 1.0) - j0_of_one()) < 1e-12);
  CHECK(std::abs(bessel_j(0, 1.0) - 0.7651976865579666) < 1e-12);

  for (double t : {0.1, 0.5, 0.8}) {
    CHECK(std::abs(burgers_sine_exact(t, 0.0, 100)) < 1e-15);
    CHECK(std::abs(burgers_sine_exact(t, 2.0 * kPi - 1.1, 100) + burgers_sine_exact(t, 1.1, 100)) <
          1e-14);
  }
  CHECK(std::abs(burgers_sine_exact(1e-6, 1.0, 50) - std::sin(1.0)) <= 1e-5);
  CHECK(std::abs(burgers_sine_exact(0.5, kPi / 2, 200) - oracle::sine_burgers(0.5, kPi / 2)) <=
        1e-10);
}
