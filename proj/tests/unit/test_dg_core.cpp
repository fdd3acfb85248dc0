#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpsldg/dg_core.hpp"

using namespace kpsldg;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss_legendre_rule closed forms") {
  const auto r1 = gauss_legendre_rule(1);
  CHECK(r1.nodes[0] == Approx(0.5).epsilon(1e-15));
  CHECK(r1.weights[0] == Approx(1.0).epsilon(1e-15));

  const auto r2 = gauss_legendre_rule(2);
  CHECK(std::abs(r2.nodes[0] - (1.0 - 1.0 / std::sqrt(3.0)) / 2.0) < 1e-15);
  CHECK(std::abs(r2.nodes[1] - (1.0 + 1.0 / std::sqrt(3.0)) / 2.0) < 1e-15);
  CHECK(std::abs(r2.weights[0] - 0.5) < 1e-15);

  const auto r3 = gauss_legendre_rule(3);
  const double s = std::sqrt(3.0 / 5.0);
  CHECK(std::abs(r3.nodes[0] - (1.0 - s) / 2.0) < 1e-15);
  CHECK(std::abs(r3.nodes[1] - 0.5) < 1e-15);
  CHECK(std::abs(r3.nodes[2] - (1.0 + s) / 2.0) < 1e-15);
  CHECK(std::abs(r3.weights[0] - 5.0 / 18.0) < 1e-15);
  CHECK(std::abs(r3.weights[1] - 8.0 / 18.0) < 1e-15);
}

TEST_CASE("gauss_legendre_rule integrates degree 2o-1 exactly") {
  for (int o = 1; o <= 16; ++o) {
    const auto r = gauss_legendre_rule(o);
    double wsum = 0.0, m = 0.0;
    for (int j = 0; j < o; ++j) {
      wsum += r.weights[j];
      m += r.weights[j] * std::pow(r.nodes[j], 2 * o - 1);
    }
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    CHECK(std::abs(m - 1.0 / (2 * o)) < 1e-14);
  }
  CHECK_THROWS_AS(gauss_legendre_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre_rule(17), std::invalid_argument);
}

TEST_CASE("eval_dg reproduces constants and polynomials") {
  const DGGrid g(-3.0, 5.0, 7, 3);
  const auto c = sample(g, [](double) { return 2.5; });
  for (double x : {-3.0, -1.234, 0.0, 4.999, 7.5})
    CHECK(std::abs(eval_dg(c, x) - 2.5) < 1e-14);

  const DGGrid one(0.0, 1.0, 1, 4);
  const auto lin = sample(one, [](double x) { return x; });
  CHECK(std::abs(eval_dg(lin, 0.3) - 0.3) < 1e-14);
  const auto cubic = sample(one, [](double x) { return x * x * x - x; });
  CHECK(std::abs(eval_dg(cubic, 0.7) - (0.343 - 0.7)) < 1e-14);
}

TEST_CASE("eval_dg approximates sin to order h^4") {
  const DGGrid g(0.0, 2.0 * kPi, 64, 4);
  const auto f = sample(g, [](double x) { return std::sin(x); });
  CHECK(std::abs(eval_dg(f, 1.0) - std::sin(1.0)) <= 1e-6);
  CHECK(std::abs(eval_dg_derivative(f, 1.0) - std::cos(1.0)) <= 1e-4);
}

TEST_CASE("interface_average") {
  const DGGrid g(0.0, 4.0, 4, 2);
  const auto c = sample(g, [](double) { return -1.5; });
  for (int i = 0; i < 4; ++i) CHECK(std::abs(interface_average(c, i) + 1.5) < 1e-14);

  for (int o = 2; o <= 5; ++o) {
    const DGGrid g2(0.0, 2.0, 2, o);
    const auto f = sample(g2, [](double x) { return x; });
    CHECK(std::abs(interface_average(f, 1) - 1.0) < 1e-14);
    // periodic wrap: mean of the jump from 2 back to 0
    CHECK(std::abs(interface_average(f, 0) - 1.0) < 1e-14);
  }

  const DGGrid gs(0.0, 2.0 * kPi, 32, 3);
  const auto s = sample(gs, [](double x) { return std::sin(x); });
  CHECK(std::abs(interface_average(s, 16)) < 1e-4);
}

TEST_CASE("mass") {
  const DGGrid g(-2.0, 3.0, 5, 3);
  CHECK(std::abs(mass(sample(g, [](double) { return 4.0; })) - 20.0) < 1e-13);

  for (int n : {3, 16, 64}) {
    const DGGrid gs(0.0, 2.0 * kPi, n, 4);
    CHECK(std::abs(mass(sample(gs, [](double x) { return std::sin(x); }))) < 1e-13);
  }

  const DGGrid gh(-20.0, 20.0, 256, 8);
  const auto f = sample(gh, [](double x) { return 1.0 / std::cosh(x); });
  CHECK(std::abs(mass(f) - 2.0 * std::atan(std::sinh(20.0))) < 1e-10);
}

TEST_CASE("inf_norm_diff") {
  const DGGrid g(0.0, 2.0 * kPi, 16, 4);
  const auto f = sample(g, [](double x) { return std::sin(x); });
  CHECK(inf_norm_diff(f, f) == 0.0);
  const auto z = sample(g, [](double) { return 0.0; });
  const auto o = sample(g, [](double) { return 1.0; });
  CHECK(inf_norm_diff(z, o) == 1.0);

  const double d = inf_norm_diff(f, [](double x) { return std::sin(x) + 1e-3 * std::sin(5.0 * x); });
  double direct = 0.0;
  for (int i = 0; i < g.n_cells(); ++i)
    for (int j = 0; j < 4; ++j) direct = std::max(direct, std::abs(1e-3 * std::sin(5.0 * g.node(i, j))));
  CHECK(std::abs(d - direct) < 1e-12);
  CHECK(d <= 1e-3);
  CHECK(d > 0.99e-3);
}

TEST_CASE("DGGrid locate and wrap") {
  const DGGrid g(-1.0, 1.0, 4, 2);
  auto [i, s] = g.locate(0.0);
  CHECK(i == 2);
  CHECK(std::abs(s) < 1e-15);
  std::tie(i, s) = g.locate(1.25);  // wraps to -0.75
  CHECK(i == 0);
  CHECK(std::abs(s - 0.5) < 1e-12);
  CHECK(std::abs(g.wrap(-1.5) - 0.5) < 1e-15);
  CHECK_THROWS_AS(DGGrid(1.0, 0.0, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(DGGrid(0.0, 1.0, 0, 2), std::invalid_argument);
}
