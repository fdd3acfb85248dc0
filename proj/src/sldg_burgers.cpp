#include "kpsldg/sldg_burgers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace kpsldg {

void CharSolverConfig::validate() const {
  if (max_iter < 1 || max_iter > 100)
    throw std::invalid_argument("CharSolverConfig: max_iter must be in [1,100], got " +
                                std::to_string(max_iter));
  if (!(tol >= 0.0)) throw std::invalid_argument("CharSolverConfig: tol must be >= 0");
}

namespace {

constexpr double kSingularJacobian = 1e-12;
constexpr double kSecantStagnation = 1e-300;
constexpr double kDegenerateOverlap = 1e-14;

bool stop_early(const CharSolverConfig& cfg, double step) {
  return cfg.tol > 0.0 && std::abs(step) <= cfg.tol;
}

// Root of g(alpha) = x - tau u(alpha) - alpha; `u` and `du` evaluate the dG
// reconstruction and its in-cell derivative at an unwrapped point.
template <typename U, typename DU>
TraceResult solve_foot(double x, double tau, const CharSolverConfig& cfg, U&& u, DU&& du) {
  switch (cfg.method) {
    case CharMethod::FixedPoint: {
      double alpha = x;
      for (int k = 1; k <= cfg.max_iter; ++k) {
        const double next = x - tau * u(alpha);
        const double step = next - alpha;
        alpha = next;
        if (stop_early(cfg, step)) return {alpha, k};
      }
      return {alpha, cfg.max_iter};
    }
    case CharMethod::Newton: {
      double alpha = x;
      for (int k = 1; k <= cfg.max_iter; ++k) {
        const double g = x - tau * u(alpha) - alpha;
        const double jac = 1.0 + tau * du(alpha);
        if (std::abs(jac) < kSingularJacobian) throw SingularJacobian(alpha);
        const double step = g / jac;
        alpha += step;
        if (stop_early(cfg, step)) return {alpha, k};
      }
      return {alpha, cfg.max_iter};
    }
    case CharMethod::Secant: {
      // One fixed-point step, then secant updates reusing the previous residual.
      double a_prev = x;
      double g_prev = -tau * u(x);
      double a_cur = x + g_prev;
      if (stop_early(cfg, g_prev)) return {a_cur, 1};
      for (int k = 2; k <= cfg.max_iter; ++k) {
        const double g_cur = x - tau * u(a_cur) - a_cur;
        const double dg = g_cur - g_prev;
        if (std::abs(dg) < kSecantStagnation) return {a_cur, k};
        const double next = a_cur - (a_cur - a_prev) * g_cur / dg;
        a_prev = a_cur;
        g_prev = g_cur;
        const double step = next - a_cur;
        a_cur = next;
        if (stop_early(cfg, step)) return {a_cur, k};
      }
      return {a_cur, cfg.max_iter};
    }
  }
  return {x, 0};
}

// Cell-wise nodal derivative values (d/dx), used by Newton.
std::vector<double> derivative_nodes(const DGField1D& f) {
  const auto& grid = f.grid();
  const int o = grid.order();
  std::vector<double> d(grid.size());
  for (int i = 0; i < grid.n_cells(); ++i) {
    std::span<double> out(d.data() + static_cast<std::size_t>(i) * o, o);
    grid.reference().differentiate(f.cell(i), out);
    for (double& v : out) v /= grid.h();
  }
  return d;
}

}  // namespace

std::vector<CellImage> predict_interfaces(const DGField1D& f, double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("predict_interfaces: non-finite tau");
  const auto& grid = f.grid();
  const int n = grid.n_cells();
  std::vector<double> avg(n);
  for (int i = 0; i < n; ++i) avg[i] = interface_average(f, i);

  std::vector<CellImage> images(n);
  for (int i = 0; i < n; ++i) {
    const double a = grid.cell_left(i) + tau * avg[i];
    const double b = grid.cell_left(i + 1) + tau * avg[(i + 1) % n];
    if (!(b - a > 0.0)) throw StepRejected(i, b - a);
    images[i] = {i, a, b};
  }
  return images;
}

TraceResult trace_back(double x, const DGField1D& f, double tau, const CharSolverConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x) || !std::isfinite(tau))
    throw std::invalid_argument("trace_back: non-finite input");
  auto u = [&](double a) { return eval_dg(f, a); };
  auto du = [&](double a) { return eval_dg_derivative(f, a); };
  return solve_foot(x, tau, cfg, u, du);
}

DGField1D sldg_step(const DGField1D& f, double tau, const CharSolverConfig& cfg,
                    SldgStats* stats) {
  cfg.validate();
  const auto images = predict_interfaces(f, tau);

  const auto& grid = f.grid();
  const auto& ref = grid.reference();
  const int o = grid.order();
  const int n = grid.n_cells();
  const double h = grid.h();
  const double a0 = grid.a();
  const auto nodes = ref.nodes();
  const auto weights = ref.weights();

  std::vector<double> dnodes;
  if (cfg.method == CharMethod::Newton) dnodes = derivative_nodes(f);

  auto u = [&](double x) {
    const auto [i, s] = grid.locate(x);
    return ref.interpolate(f.cell(i), s);
  };
  auto du = [&](double x) {
    const auto [i, s] = grid.locate(x);
    return ref.interpolate(
        std::span<const double>(dnodes.data() + static_cast<std::size_t>(i) * o, o), s);
  };

  DGField1D out(grid);
  std::array<double, 16> phi{};
  std::array<double, 16> acc{};
  long traces = 0, iterations = 0;
  int widest = 0;

  for (const auto& img : images) {
    const int i = img.cell;
    const double xi = grid.cell_left(i);
    const auto src = f.cell(i);
    const long m_lo = static_cast<long>(std::floor((img.a - a0) / h));
    const long m_hi = static_cast<long>(std::floor((img.b - a0) / h));
    widest = std::max<int>(widest, static_cast<int>(m_hi - m_lo + 1));

    for (long m = m_lo; m <= m_hi; ++m) {
      const double left = a0 + m * h;
      const double c = std::max(img.a, left);
      const double d = std::min(img.b, left + h);
      const double len = d - c;
      if (len < kDegenerateOverlap * h) continue;

      std::fill(acc.begin(), acc.begin() + o, 0.0);
      for (int r = 0; r < o; ++r) {
        const double y = c + len * nodes[r];
        const auto foot = solve_foot(y, tau, cfg, u, du);
        ++traces;
        iterations += foot.iterations;
        const double value = ref.interpolate(src, (foot.alpha - xi) / h);
        ref.basis_values((y - left) / h, std::span<double>(phi.data(), o));
        const double wr = len * weights[r] * value;
        for (int l = 0; l < o; ++l) acc[l] += wr * phi[l];
      }
      const int target = static_cast<int>(((m % n) + n) % n);
      auto dst = out.cell(target);
      for (int l = 0; l < o; ++l) dst[l] += acc[l] / (h * weights[l]);
    }
  }

  if (stats) {
    stats->traces += traces;
    stats->iterations += iterations;
    stats->max_cells_per_image = std::max(stats->max_cells_per_image, widest);
  }
  return out;
}

DGField2D sldg_step_rows(const DGField2D& f, double tau, const CharSolverConfig& cfg,
                         SldgStats* stats) {
  DGField2D out(f.grid_x, f.n_y, f.y_lo, f.y_hi);
  for (int r = 0; r < f.n_y; ++r) {
    try {
      out.rows[r] = sldg_step(f.rows[r], tau, cfg, stats);
    } catch (const StepRejected& e) {
      throw e.with_row(r);
    }
  }
  return out;
}

}  // namespace kpsldg
