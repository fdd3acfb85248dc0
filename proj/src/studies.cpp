#include "kpsldg/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kpsldg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* scheme_name(Scheme s) { return s == Scheme::Strang ? "strang" : "exp2"; }

}  // namespace

std::pair<long, double> step_plan(double t_final, double tau) {
  if (!(t_final > 0.0) || !(tau > 0.0) || !std::isfinite(t_final) || !std::isfinite(tau))
    throw std::invalid_argument("step_plan: t_final and tau must be positive");
  const long n = std::max(1L, std::lround(t_final / tau));
  return {n, t_final / static_cast<double>(n)};
}

double sine_burgers_by_characteristics(double t, double x) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("characteristics: need 0 <= t < 1");
  double lo = x - t, hi = x + t;  // g(xi) = xi + t sin xi - x changes sign here
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

// ---------------------------------------------------------------- Burgers

DGGrid burgers_grid(const InitialCondition& ic, int cells, int order) {
  if (ic.kind == ICKind::Sine) return DGGrid(0.0, 2.0 * std::numbers::pi, cells, order);
  return DGGrid(-ic.L, ic.L, cells, order);
}

DGField1D burgers_evolve(DGField1D f, long n_steps, double tau, const CharSolverConfig& cfg,
                         SldgStats* stats) {
  for (long s = 0; s < n_steps; ++s) {
    try {
      f = sldg_step(f, tau, cfg, stats);
    } catch (const StepRejected& e) {
      throw e.with_time(static_cast<double>(s) * tau);
    }
  }
  return f;
}

std::vector<RunRecord> run_burgers_convergence(const BurgersConvergenceConfig& cfg) {
  const auto [n_steps, tau] = step_plan(cfg.t_final, cfg.tau);
  const bool closed_form = cfg.ic.kind == ICKind::Sine;

  std::optional<DGField1D> ref;
  if (!closed_form) {
    const DGGrid g = burgers_grid(cfg.ic, cfg.ref_cells, cfg.ref_order);
    ref = burgers_evolve(make_initial(cfg.ic, g), n_steps, tau, cfg.solver);
  }

  std::vector<RunRecord> rows;
  for (int o : cfg.orders) {
    for (int cells : cfg.cells) {
      RunRecord r;
      r.study = "burgers-convergence";
      r.scheme = "sldg";
      r.order = o;
      r.n_cells = cells;
      r.N_x = cells * o;
      r.n_y = 1;
      r.tau = tau;
      r.n_steps = n_steps;
      r.t_final = cfg.t_final;
      r.note = cfg.ic.name();
      const auto t0 = Clock::now();
      try {
        const DGGrid g = burgers_grid(cfg.ic, cells, o);
        const DGField1D f0 = make_initial(cfg.ic, g);
        SldgStats stats;
        const DGField1D f = burgers_evolve(f0, n_steps, tau, cfg.solver, &stats);
        if (closed_form) {
          const double t = cfg.t_final;
          r.error = inf_norm_diff(f, [t](double x) { return burgers_sine_exact(t, x, 200); });
        } else {
          const DGField1D& rf = *ref;
          r.error = inf_norm_diff(f, [&rf](double x) { return eval_dg(rf, x); });
        }
        r.space_error = r.error;
        r.iterations = stats.iterations;
        r.mass_drift = std::abs(mass(f) - mass(f0));
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = std::nan("");
        r.note = e.what();
      }
      r.wall_time = seconds_since(t0);
      rows.push_back(r);
    }
  }
  return rows;
}

std::string method_name(CharMethod m) {
  switch (m) {
    case CharMethod::FixedPoint: return "fixed";
    case CharMethod::Secant: return "secant";
    case CharMethod::Newton: return "newton";
  }
  return "?";
}

CharMethod parse_method(const std::string& s) {
  if (s == "fixed" || s == "fixed-point") return CharMethod::FixedPoint;
  if (s == "secant") return CharMethod::Secant;
  if (s == "newton") return CharMethod::Newton;
  throw std::invalid_argument("unknown characteristic solver '" + s + "'");
}

std::vector<RunRecord> run_iteration_study(const IterationStudyConfig& cfg) {
  const DGGrid g = burgers_grid(cfg.ic, cfg.cells, cfg.order);
  const DGField1D f0 = make_initial(cfg.ic, g);
  std::vector<RunRecord> rows;
  for (double tau_req : cfg.taus) {
    const auto [n_steps, tau] = step_plan(cfg.t_final, tau_req);
    const DGField1D ref = burgers_evolve(
        f0, n_steps, tau, CharSolverConfig{CharMethod::Secant, cfg.ref_iterations, 0.0});
    for (CharMethod m : cfg.methods) {
      for (int k : cfg.iterations) {
        RunRecord r;
        r.study = "iteration-study";
        r.scheme = method_name(m);
        r.order = cfg.order;
        r.n_cells = cfg.cells;
        r.N_x = cfg.cells * cfg.order;
        r.n_y = 1;
        r.tau = tau;
        r.n_steps = n_steps;
        r.t_final = cfg.t_final;
        r.iterations = k;
        const auto t0 = Clock::now();
        try {
          const DGField1D f = burgers_evolve(f0, n_steps, tau, CharSolverConfig{m, k, 0.0});
          r.error = inf_norm_diff(f, ref);
          r.mass_drift = std::abs(mass(f) - mass(f0));
        } catch (const std::exception& e) {
          r.ok = false;
          r.error = std::nan("");
          r.note = e.what();
        }
        r.wall_time = seconds_since(t0);
        rows.push_back(r);
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------- KP

SchemeConfig make_scheme_config(const KPRunConfig& cfg) {
  SchemeConfig sc(default_dg_grid(cfg.Lx, cfg.n_x, cfg.order, cfg.rho), cfg.n_x);
  sc.scheme = cfg.scheme;
  const auto [n, tau] = step_plan(cfg.t_final, cfg.tau);
  sc.tau = tau;
  sc.n_steps = n;
  sc.char_solver = cfg.solver;
  sc.fuse_half_steps = cfg.fuse_half_steps;
  sc.params = cfg.params;
  return sc;
}

KPRunResult run_kp(const KPRunConfig& cfg, const std::vector<Observer>& observers,
                   long observe_stride) {
  const SchemeConfig sc = make_scheme_config(cfg);
  KPRunResult res{make_initial(cfg.ic, cfg.n_x, cfg.n_y, cfg.Lx, cfg.Ly), {}};
  RunRecord& r = res.record;
  r.study = "kp-run";
  r.scheme = scheme_name(cfg.scheme);
  if (cfg.scheme == Scheme::Strang) {
    r.order = cfg.order;
    r.n_cells = sc.dg_grid.n_cells();
    r.N_x = static_cast<int>(sc.dg_grid.size());
  }
  r.n_x = cfg.n_x;
  r.n_y = cfg.n_y;
  r.tau = sc.tau;
  r.n_steps = sc.n_steps;
  r.t_final = cfg.t_final;
  const double mass0 = grid_mass(res.field);
  const auto t0 = Clock::now();
  try {
    SldgStats stats;
    res.field = evolve(res.field, sc, observers, observe_stride, &stats);
    r.iterations = stats.iterations;
    r.mass_drift = std::abs(grid_mass(res.field) - mass0);
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = std::nan("");
    r.note = e.what();
  }
  r.wall_time = seconds_since(t0);
  return res;
}

double field_distance(const GridField2D& a, const GridField2D& b) {
  const GridField2D& fine = a.n_x >= b.n_x ? a : b;
  const GridField2D& coarse = a.n_x >= b.n_x ? b : a;
  if (fine.n_x % coarse.n_x != 0 || fine.n_y % coarse.n_y != 0 || fine.n_y < coarse.n_y)
    throw std::invalid_argument("field_distance: grid sizes must divide each other");
  if (std::abs(fine.Lx - coarse.Lx) > 1e-12 * fine.Lx ||
      std::abs(fine.Ly - coarse.Ly) > 1e-12 * fine.Ly)
    throw std::invalid_argument("field_distance: domains differ");
  const int sx = fine.n_x / coarse.n_x, sy = fine.n_y / coarse.n_y;
  double d = 0.0;
  for (int iy = 0; iy < coarse.n_y; ++iy)
    for (int ix = 0; ix < coarse.n_x; ++ix)
      d = std::max(d, std::abs(coarse.at(ix, iy) - fine.at(ix * sx, iy * sy)));
  return d;
}

KPConvergenceResult run_kp_time_convergence(const KPRunConfig& base,
                                            const std::vector<double>& taus, double tau_ref) {
  KPRunConfig rc = base;
  rc.tau = tau_ref;
  auto ref = run_kp(rc);
  if (!ref.record.ok)
    throw std::runtime_error("reference run failed: " + ref.record.note);
  ref.record.study = "kp-convergence-reference";
  KPConvergenceResult out{{}, std::move(ref.field), ref.record};
  for (double tau : taus) {
    KPRunConfig c = base;
    c.tau = tau;
    auto run = run_kp(c);
    run.record.study = "kp-time-convergence";
    if (run.record.ok) {
      run.record.error = field_distance(run.field, out.reference);
      run.record.time_error = run.record.error;
    }
    out.records.push_back(run.record);
  }
  return out;
}

std::vector<RunRecord> run_kp_space_convergence(const KPRunConfig& base,
                                                const std::vector<int>& n_list, int ref_n) {
  KPRunConfig rc = base;
  rc.n_x = rc.n_y = ref_n;
  auto ref = run_kp(rc);
  if (!ref.record.ok)
    throw std::runtime_error("reference run failed: " + ref.record.note);
  std::vector<RunRecord> rows;
  for (int n : n_list) {
    KPRunConfig c = base;
    c.n_x = c.n_y = n;
    auto run = run_kp(c);
    run.record.study = "kp-space-convergence";
    if (run.record.ok) {
      run.record.error = field_distance(run.field, ref.field);
      run.record.space_error = run.record.error;
    }
    rows.push_back(run.record);
  }
  return rows;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> eoc;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    eoc.push_back(std::log2(errors[k] / errors[k + 1]));
  return eoc;
}

// ---------------------------------------------------------------- soliton

int soliton_points(int dof, int order) {
  if (dof < 1 || order < 1) throw std::invalid_argument("soliton_points: need dof, order >= 1");
  long cells = std::max(1L, std::lround(static_cast<double>(dof) / order));
  if ((cells * order) % 2 != 0) cells = cells > 1 ? cells - 1 : 2;
  return static_cast<int>(cells * order);
}

namespace {

// Real trigonometric interpolant of one periodic row, evaluated at fractional
// index s.
struct TrigRow {
  explicit TrigRow(std::span<const double> v) : n(static_cast<int>(v.size())) {
    const int half = n / 2;
    re.assign(half + 1, 0.0);
    im.assign(half + 1, 0.0);
    for (int k = 0; k <= half; ++k) {
      double sr = 0.0, si = 0.0;
      for (int j = 0; j < n; ++j) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(
                                                          (static_cast<long>(j) * k) % n) / n;
        sr += v[j] * std::cos(ph);
        si -= v[j] * std::sin(ph);
      }
      re[k] = sr / n;
      im[k] = si / n;
    }
  }
  double operator()(double s) const {
    const int half = n / 2;
    double p = re[0];
    for (int k = 1; k <= half; ++k) {
      const double ph = 2.0 * std::numbers::pi * k * s / n;
      const double w = (n % 2 == 0 && k == half) ? 1.0 : 2.0;
      p += w * (re[k] * std::cos(ph) - im[k] * std::sin(ph));
    }
    return p;
  }
  int n;
  std::vector<double> re, im;
};

}  // namespace

double peak_amplitude(const GridField2D& u) {
  int bx = 0, by = 0;
  for (int iy = 0; iy < u.n_y; ++iy)
    for (int ix = 0; ix < u.n_x; ++ix)
      if (std::abs(u.at(ix, iy)) > std::abs(u.at(bx, by))) {
        bx = ix;
        by = iy;
      }
  if (u.n_x < 4) return std::abs(u.at(bx, by));
  const TrigRow p(u.row(by));
  auto f = [&](double s) { return std::abs(p(s)); };
  // Golden-section search for the maximum on [bx - 1, bx + 1].
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = bx - 1.0, hi = bx + 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 0; k < 60; ++k) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({f1, f2, std::abs(u.at(bx, by))});
}

SolitonStudyResult run_soliton_study(const SolitonStudyConfig& cfg) {
  SolitonStudyResult out;
  InitialCondition ic = InitialCondition::from_name("soliton");
  ic.epsilon = cfg.epsilon;
  for (int o : cfg.orders) {
    KPRunConfig rc;
    rc.params.epsilon = cfg.epsilon;
    rc.params.lambda = -1;
    rc.ic = ic;
    rc.scheme = Scheme::Strang;
    rc.order = o;
    rc.n_x = soliton_points(cfg.dof, o);
    rc.n_y = cfg.n_y;
    rc.Lx = cfg.Lx;
    rc.Ly = cfg.Ly;
    rc.tau = cfg.tau;
    rc.t_final = cfg.t_final;
    rc.solver = cfg.solver;
    double last = std::nan("");
    Observer obs = [&](long, double t, const GridField2D& u) {
      last = peak_amplitude(u);
      out.samples.push_back({o, t, last});
    };
    auto run = run_kp(rc, {obs}, cfg.record_stride);
    run.record.study = "soliton";
    if (run.record.ok) run.record.error = std::abs(last - ic.c);
    out.records.push_back(run.record);
  }
  return out;
}

// ---------------------------------------------------------------- cost study

CostStudyResult run_cost_study(const CostStudyConfig& cfg) {
  CostStudyResult out;
  KPRunConfig rc = cfg.base;
  rc.scheme = Scheme::Exp2;
  rc.n_x = rc.n_y = cfg.ref_n;
  rc.tau = cfg.ref_tau;
  const auto ref = run_kp(rc);
  if (!ref.record.ok) throw std::runtime_error("reference run failed: " + ref.record.note);

  std::vector<double> taus = cfg.taus;
  std::sort(taus.begin(), taus.end(), std::greater<>());  // smallest tau last
  for (Scheme scheme : {Scheme::Strang, Scheme::Exp2}) {
    const auto& ns = scheme == Scheme::Strang ? cfg.strang_n : cfg.exp2_n;
    for (int n : ns) {
      std::vector<KPRunResult> runs;
      for (double tau : taus) {
        KPRunConfig c = cfg.base;
        c.scheme = scheme;
        c.n_x = c.n_y = n;
        c.tau = tau;
        runs.push_back(run_kp(c));
        auto& r = runs.back().record;
        r.study = "cost-compare";
        if (r.ok) {
          r.error = field_distance(runs.back().field, ref.field);
          if (!std::isfinite(r.error)) {
            r.ok = false;
            r.note = "non-finite error";
          }
        }
      }
      const KPRunResult& finest = runs.back();
      for (std::size_t k = 0; k < runs.size(); ++k) {
        RunRecord r = runs[k].record;
        if (r.ok && finest.record.ok) {
          r.space_error = finest.record.error;
          if (k + 1 < runs.size()) {
            r.time_error = field_distance(runs[k].field, finest.field);
          } else if (runs.size() > 1 && runs[k - 1].record.ok) {
            // second order: a quarter of the distance of the previous tau
            const double ratio = taus[k] / taus[k - 1];
            r.time_error = field_distance(runs[k - 1].field, finest.field) * ratio * ratio;
          }
        }
        out.records.push_back(r);
      }
    }
  }
  out.points = cost_accuracy_curve(out.records, cfg.tolerances);
  return out;
}

// ---------------------------------------------------------------- self test

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::vector<SeedCheck> run_seed_check() {
  std::vector<SeedCheck> checks;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const auto rule = gauss_legendre_rule(5);
    double s = 0.0;
    for (int j = 0; j < 5; ++j) s += rule.weights[j] * std::pow(rule.nodes[j], 9);
    const double err = std::abs(s - 0.1);
    add("gauss-legendre-exactness", err < 1e-14, "int_0^1 x^9 error " + sci(err));
  }
  {
    double worst = 0.0;
    for (double t : {0.1, 0.5, 0.8})
      for (double x : {0.3, 1.7, 3.0, 5.5})
        worst = std::max(worst, std::abs(burgers_sine_exact(t, x, 200) -
                                         sine_burgers_by_characteristics(t, x)));
    add("bessel-series-vs-characteristics", worst < 1e-10, "max diff " + sci(worst));
  }
  {
    KPParams p;
    p.epsilon = 0.1;
    const int nx = 32, ny = 8;
    const double L = std::numbers::pi, tau = 0.1, k = 3.0;
    const auto u = sample(nx, ny, L, L, [&](double x, double) { return std::sin(k * x); });
    const auto v = apply_propagator(u, tau, p);
    const double phase = p.epsilon * p.epsilon * k * k * k * tau;
    double err = 0.0;
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        err = std::max(err, std::abs(v.at(ix, iy) - std::sin(k * u.x(ix) + phase)));
    add("propagator-dispersion", err < 1e-12, "max error " + sci(err));
  }
  {
    const bool ok = strang_cost({512, 512, 512}) == 2621440 &&
                    exp2_cost({512, 0, 512}) == 8388608 && exp2_cost({1, 0, 1}) == 32;
    add("cost-model-identities", ok, "Strang (7n_x+3N_x)n_y, exp2 32n_xn_y");
  }
  return checks;
}

}  // namespace kpsldg
