#include "kpsldg/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace kpsldg {

void SchemeConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("SchemeConfig: tau must be positive");
  if (n_steps < 1) throw std::invalid_argument("SchemeConfig: n_steps must be >= 1");
  if (n_x < 2 || n_x % 2 != 0) throw std::invalid_argument("SchemeConfig: n_x must be even");
  char_solver.validate();
  params.validate();
}

DGGrid default_dg_grid(double Lx, int n_x, int order, double rho) {
  const int cells = std::max(1, static_cast<int>(std::lround(n_x * rho / order)));
  if (cells * order != n_x) return DGGrid(-Lx, Lx, cells, order);
  // Aligned case: shift by half a sample spacing so the o samples of every
  // cell sit at s = (q + 1/2)/o, symmetric about the cell centre.
  const double half_dx = Lx / n_x;
  return DGGrid(-Lx - half_dx, Lx - half_dx, cells, order);
}

namespace {

void check_finite(const GridField2D& u, long step, const char* where) {
  for (double v : u.values)
    if (!std::isfinite(v)) throw DivergenceError(step, where);
}

double half_length(const DGGrid& g) { return 0.5 * g.length(); }

}  // namespace

StrangStepper::StrangStepper(const SchemeConfig& cfg, int n_y, double Ly)
    : cfg_(cfg), fft_(cfg.n_x, n_y), transfer_(cfg.dg_grid, cfg.n_x, true) {
  cfg_.validate();
  const double Lx = half_length(cfg_.dg_grid);
  half_ = PropagatorTables::build(cfg_.n_x, n_y, Lx, Ly, 0.5 * cfg_.tau, cfg_.params, false).phi0;
  full_ = PropagatorTables::build(cfg_.n_x, n_y, Lx, Ly, cfg_.tau, cfg_.params, false).phi0;
  spec_.resize(half_.size());
}

void StrangStepper::linear(GridField2D& u, const std::vector<cplx>& multiplier) {
  fft_.forward(u.values, spec_);
  multiply(spec_, multiplier);
  fft_.inverse(spec_, u.values);
}

void StrangStepper::half_linear(GridField2D& u) { linear(u, half_); }
void StrangStepper::full_linear(GridField2D& u) { linear(u, full_); }

void StrangStepper::nonlinear(GridField2D& u, double t_stamp) {
  const DGField2D f = transfer_.to_dg(u);
  DGField2D g = f;
  try {
    g = sldg_step_rows(f, cfg_.nonlinear_coefficient * cfg_.tau, cfg_.char_solver, &stats_);
  } catch (const StepRejected& e) {
    throw e.with_time(t_stamp);
  }
  // Only the increment of the substep is transferred back; the transfer round
  // trip is never applied to the full state (its repeated application is unstable).
  std::vector<double> inc(u.n_x);
  for (int r = 0; r < u.n_y; ++r) {
    auto gc = g.rows[r].coeffs();
    auto fc = f.rows[r].coeffs();
    for (std::size_t k = 0; k < gc.size(); ++k) gc[k] -= fc[k];
    transfer_.to_equidistant(g.rows[r], inc);
    auto row = u.row(r);
    for (int p = 0; p < u.n_x; ++p) row[p] += inc[p];
  }
}

void StrangStepper::step(GridField2D& u, double t_stamp) {
  half_linear(u);
  nonlinear(u, t_stamp);
  half_linear(u);
}

Exp2Stepper::Exp2Stepper(const SchemeConfig& cfg, int n_y, double Ly)
    : cfg_(cfg),
      fft_(cfg.n_x, n_y),
      tables_(PropagatorTables::build(cfg.n_x, n_y, half_length(cfg.dg_grid), Ly, cfg.tau,
                                      cfg.params, true)),
      dx_(derivative_multiplier(cfg.n_x, n_y, half_length(cfg.dg_grid))) {
  cfg_.validate();
  const std::size_t ns = tables_.phi0.size();
  const std::size_t nr = static_cast<std::size_t>(cfg.n_x) * n_y;
  u_hat_.resize(ns);
  tmp_.resize(ns);
  b_hat_.resize(ns);
  big_u_hat_.resize(ns);
  ux_.resize(nr);
  b_.resize(nr);
  big_u_.resize(nr);
  big_ux_.resize(nr);
}

void Exp2Stepper::step(GridField2D& u, long step_index) {
  const double c = cfg_.nonlinear_coefficient;
  const std::size_t ns = u_hat_.size();
  const std::size_t nr = u.values.size();

  // 1. u^n transformed (reused when u is the previous output)
  if (!have_hat_ || last_u_.size() != nr ||
      std::memcmp(last_u_.data(), u.values.data(), nr * sizeof(double)) != 0)
    fft_.forward(u.values, u_hat_);
  // 2. u_x^n
  for (std::size_t k = 0; k < ns; ++k) tmp_[k] = dx_[k] * u_hat_[k];
  fft_.inverse(tmp_, ux_);
  // 3. B = u_x^n u^n
  for (std::size_t k = 0; k < nr; ++k) b_[k] = ux_[k] * u.values[k];
  // 4. B^
  fft_.forward(b_, b_hat_);
  // 5. U^ = Phi0 u^ - c Phi1 B^
  for (std::size_t k = 0; k < ns; ++k)
    big_u_hat_[k] = tables_.phi0[k] * u_hat_[k] - c * tables_.phi1[k] * b_hat_[k];
  // 6. U
  fft_.inverse(big_u_hat_, big_u_);
  // 7. U_x
  for (std::size_t k = 0; k < ns; ++k) tmp_[k] = dx_[k] * big_u_hat_[k];
  fft_.inverse(tmp_, big_ux_);
  // 8. F = U U_x - B (stored in b_)
  for (std::size_t k = 0; k < nr; ++k) b_[k] = big_u_[k] * big_ux_[k] - b_[k];
  // 9. F^
  fft_.forward(b_, b_hat_);
  // 10. u^{n+1}^ = U^ - c Phi2 F^
  for (std::size_t k = 0; k < ns; ++k)
    u_hat_[k] = big_u_hat_[k] - c * tables_.phi2[k] * b_hat_[k];
  // 11. u^{n+1}
  fft_.inverse(u_hat_, u.values);

  check_finite(u, step_index, "exp2 produced a non-finite value");
  last_u_ = u.values;
  have_hat_ = true;
}

GridField2D strang_step(const GridField2D& u, const SchemeConfig& cfg) {
  if (cfg.scheme != Scheme::Strang) throw std::invalid_argument("strang_step: scheme is not Strang");
  StrangStepper stepper(cfg, u.n_y, u.Ly);
  GridField2D out = u;
  stepper.step(out, 0.0);
  return out;
}

GridField2D exp2_step(const GridField2D& u, const SchemeConfig& cfg) {
  if (cfg.scheme != Scheme::Exp2) throw std::invalid_argument("exp2_step: scheme is not Exp2");
  Exp2Stepper stepper(cfg, u.n_y, u.Ly);
  GridField2D out = u;
  stepper.step(out, 0);
  return out;
}

GridField2D evolve(const GridField2D& u0, const SchemeConfig& cfg,
                   const std::vector<Observer>& observers, long observe_stride,
                   SldgStats* stats) {
  cfg.validate();
  if (u0.n_x != cfg.n_x) throw std::invalid_argument("evolve: n_x mismatch with config");
  GridField2D u = u0;
  const long n = cfg.n_steps;
  auto observed = [&](long s) {
    return s == n || (observe_stride > 0 && s % observe_stride == 0);
  };
  auto notify = [&](long s) {
    for (const auto& obs : observers) obs(s, static_cast<double>(s) * cfg.tau, u);
  };
  if (!observers.empty()) notify(0);

  if (cfg.scheme == Scheme::Exp2) {
    Exp2Stepper stepper(cfg, u.n_y, u.Ly);
    for (long s = 1; s <= n; ++s) {
      stepper.step(u, s);
      if (!observers.empty() && observed(s)) notify(s);
    }
    return u;
  }

  StrangStepper stepper(cfg, u.n_y, u.Ly);
  bool pending_half = false;  // closing half-step of the previous step not yet applied
  for (long s = 1; s <= n; ++s) {
    if (pending_half)
      stepper.full_linear(u);
    else
      stepper.half_linear(u);
    stepper.nonlinear(u, static_cast<double>(s - 1) * cfg.tau);
    const bool boundary = s == n || (!observers.empty() && observed(s));
    if (cfg.fuse_half_steps && !boundary) {
      pending_half = true;
    } else {
      stepper.half_linear(u);
      pending_half = false;
      check_finite(u, s, "Strang step produced a non-finite value");
    }
    if (!observers.empty() && observed(s)) notify(s);
  }
  if (stats) {
    stats->traces += stepper.stats().traces;
    stats->iterations += stepper.stats().iterations;
    stats->max_cells_per_image =
        std::max(stats->max_cells_per_image, stepper.stats().max_cells_per_image);
  }
  return u;
}

}  // namespace kpsldg
