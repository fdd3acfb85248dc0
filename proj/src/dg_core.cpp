#include "kpsldg/dg_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kpsldg {

QuadratureRule gauss_legendre_rule(int order) {
  if (order < 1 || order > 16)
    throw std::invalid_argument("gauss_legendre_rule: order must be in [1,16], got " +
                                std::to_string(order));
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  // Newton on P_o over [-1,1] in extended precision; only the nonnegative half
  // is computed and mirrored so that the reflection identities hold exactly.
  const long double pi = std::numbers::pi_v<long double>;
  const int half = (order + 1) / 2;
  for (int m = 0; m < half; ++m) {
    long double t = std::cos(pi * (m + 0.75L) / (order + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = t;
      for (int n = 2; n <= order; ++n) {
        long double p2 = ((2 * n - 1) * t * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      long double p = order == 1 ? t : p1;
      long double pm1 = order == 1 ? 1 : p0;
      dp = order * (t * p - pm1) / (t * t - 1);
      if (order == 1) dp = 1;
      long double dt = p / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-19L) break;
    }
    // Recompute the derivative at the converged root for the weight.
    {
      long double p0 = 1, p1 = t;
      for (int n = 2; n <= order; ++n) {
        long double p2 = ((2 * n - 1) * t * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = order == 1 ? 1 : order * (t * p1 - p0) / (t * t - 1);
    }
    if (2 * m + 1 == order) t = 0;  // middle node of odd rules
    const long double w = 1 / ((1 - t * t) * dp * dp);  // [-1,1] weight / 2
    // t > 0 here; node index order-1-m is the larger one.
    rule.nodes[order - 1 - m] = static_cast<double>((1 + t) / 2);
    rule.nodes[m] = static_cast<double>((1 - t) / 2);
    rule.weights[order - 1 - m] = static_cast<double>(w);
    rule.weights[m] = static_cast<double>(w);
  }
  return rule;
}

ReferenceCell::ReferenceCell(QuadratureRule rule) : rule_(std::move(rule)) {
  const int o = rule_.order;
  const auto& x = rule_.nodes;
  bary_.assign(o, 1.0);
  for (int j = 0; j < o; ++j) {
    double p = 1.0;
    for (int k = 0; k < o; ++k)
      if (k != j) p *= x[j] - x[k];
    bary_[j] = 1.0 / p;
  }
  at_left_.assign(o, 0.0);
  at_right_.assign(o, 0.0);
  basis_values(0.0, at_left_);
  basis_values(1.0, at_right_);

  diff_.assign(static_cast<std::size_t>(o) * o, 0.0);
  for (int j = 0; j < o; ++j) {
    double diag = 0.0;
    for (int k = 0; k < o; ++k) {
      if (k == j) continue;
      const double d = (bary_[k] / bary_[j]) / (x[j] - x[k]);
      diff_[j * o + k] = d;
      diag -= d;
    }
    diff_[j * o + j] = diag;
  }
}

void ReferenceCell::basis_values(double s, std::span<double> out) const {
  const int o = rule_.order;
  const auto& x = rule_.nodes;
  for (int j = 0; j < o; ++j) {
    if (s == x[j]) {
      std::fill(out.begin(), out.begin() + o, 0.0);
      out[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < o; ++j) {
    out[j] = bary_[j] / (s - x[j]);
    denom += out[j];
  }
  for (int j = 0; j < o; ++j) out[j] /= denom;
}

double ReferenceCell::interpolate(std::span<const double> u, double s) const {
  const int o = rule_.order;
  const auto& x = rule_.nodes;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < o; ++j) {
    const double d = s - x[j];
    if (d == 0.0) return u[j];
    const double w = bary_[j] / d;
    num += w * u[j];
    den += w;
  }
  return num / den;
}

void ReferenceCell::differentiate(std::span<const double> u, std::span<double> du) const {
  const int o = rule_.order;
  for (int j = 0; j < o; ++j) {
    double acc = 0.0;
    for (int k = 0; k < o; ++k) acc += diff_[j * o + k] * u[k];
    du[j] = acc;
  }
}

DGGrid::DGGrid(double a, double b, int n_cells, int order)
    : DGGrid(a, b, n_cells, gauss_legendre_rule(order)) {}

DGGrid::DGGrid(double a, double b, int n_cells, QuadratureRule rule)
    : a_(a), b_(b), n_cells_(n_cells) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("DGGrid: need finite a < b");
  if (n_cells < 1) throw std::invalid_argument("DGGrid: n_cells must be >= 1");
  h_ = (b - a) / n_cells;
  ref_ = std::make_shared<const ReferenceCell>(std::move(rule));
}

double DGGrid::wrap(double x) const {
  if (x >= a_ && x < b_) return x;
  const double len = b_ - a_;
  double r = std::fmod(x - a_, len);
  if (r < 0) r += len;
  if (r >= len) r = 0;
  return a_ + r;
}

std::pair<int, double> DGGrid::locate(double x) const {
  const double t = (wrap(x) - a_) / h_;
  int i = static_cast<int>(std::floor(t));
  if (i >= n_cells_) i = n_cells_ - 1;
  if (i < 0) i = 0;
  return {i, t - i};
}

DGField1D::DGField1D(DGGrid grid) : grid_(std::move(grid)), coeffs_(grid_.size(), 0.0) {}

DGField1D::DGField1D(DGGrid grid, std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw std::invalid_argument("DGField1D: coefficient count does not match grid");
}

DGField2D::DGField2D(DGGrid gx, int ny, double lo, double hi)
    : grid_x(std::move(gx)), n_y(ny), y_lo(lo), y_hi(hi) {
  if (n_y < 1) throw std::invalid_argument("DGField2D: n_y must be >= 1");
  rows.assign(n_y, DGField1D(grid_x));
}

double eval_dg(const DGField1D& f, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("eval_dg: non-finite x");
  const auto [i, s] = f.grid().locate(x);
  return f.grid().reference().interpolate(f.cell(i), s);
}

double eval_dg_derivative(const DGField1D& f, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("eval_dg_derivative: non-finite x");
  const auto& grid = f.grid();
  const auto [i, s] = grid.locate(x);
  double du[16];
  std::span<double> d(du, grid.order());
  grid.reference().differentiate(f.cell(i), d);
  return grid.reference().interpolate(d, s) / grid.h();
}

double interface_average(const DGField1D& f, int i) {
  const auto& grid = f.grid();
  const int n = grid.n_cells();
  const int right = ((i % n) + n) % n;
  const int left = (right - 1 + n) % n;
  const auto& ref = grid.reference();
  double l = 0.0, r = 0.0;
  auto uL = f.cell(left);
  auto uR = f.cell(right);
  for (int j = 0; j < grid.order(); ++j) {
    l += ref.right_values()[j] * uL[j];
    r += ref.left_values()[j] * uR[j];
  }
  return 0.5 * (l + r);
}

double mass(const DGField1D& f) {
  const auto& grid = f.grid();
  const auto w = grid.rule().weights;
  double total = 0.0;
  for (int i = 0; i < grid.n_cells(); ++i) {
    double cell = 0.0;
    for (int j = 0; j < grid.order(); ++j) cell += w[j] * f.at(i, j);
    total += cell;
  }
  return grid.h() * total;
}

double mass(const DGField2D& f) {
  double total = 0.0;
  for (const auto& row : f.rows) total += mass(row);
  return total * (f.y_hi - f.y_lo) / f.n_y;
}

double inf_norm_diff(const DGField1D& f, const DGField1D& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("inf_norm_diff: grids differ");
  double m = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double inf_norm_diff(const DGField1D& f, const std::function<double(double)>& g) {
  const auto& grid = f.grid();
  double m = 0.0;
  for (int i = 0; i < grid.n_cells(); ++i)
    for (int j = 0; j < grid.order(); ++j)
      m = std::max(m, std::abs(f.at(i, j) - g(grid.node(i, j))));
  return m;
}

double inf_norm_diff(const DGField2D& f, const DGField2D& g) {
  if (f.n_y != g.n_y) throw std::invalid_argument("inf_norm_diff: row counts differ");
  double m = 0.0;
  for (int r = 0; r < f.n_y; ++r) m = std::max(m, inf_norm_diff(f.rows[r], g.rows[r]));
  return m;
}

double inf_norm_diff(const DGField2D& f, const std::function<double(double, double)>& g) {
  double m = 0.0;
  for (int r = 0; r < f.n_y; ++r) {
    const double y = f.y(r);
    m = std::max(m, inf_norm_diff(f.rows[r], [&](double x) { return g(x, y); }));
  }
  return m;
}

}  // namespace kpsldg
