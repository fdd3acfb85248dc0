#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kpsldg/costmodel.hpp"
#include "kpsldg/initial_conditions.hpp"
#include "kpsldg/integrators.hpp"
#include "kpsldg/run_record.hpp"

namespace kpsldg {

/// Steps of size close to `tau` that land exactly on t_final: n = max(1,
/// round(t_final / tau)), returned together with t_final / n.
std::pair<long, double> step_plan(double t_final, double tau);

/// Sine Burgers solution from the characteristic equation xi + t sin xi = x,
/// solved by bisection (0 <= t < 1).
double sine_burgers_by_characteristics(double t, double x);

// ---------------------------------------------------------------- Burgers

struct BurgersConvergenceConfig {
  InitialCondition ic;
  std::vector<int> orders{2, 4, 8};
  std::vector<int> cells{32, 64, 128};
  double t_final = 0.1;
  double tau = 1e-3;
  CharSolverConfig solver{CharMethod::Secant, 10, 0.0};
  /// Reference for data without a closed-form solution (sech, lorentzian).
  int ref_order = 8;
  int ref_cells = 1024;
};

/// Domain of the 1D Burgers runs: [0, 2 pi] for sine, [-L, L] otherwise.
DGGrid burgers_grid(const InitialCondition& ic, int cells, int order);

/// Evolves `f` over n_steps steps of size tau (accumulating solver stats).
DGField1D burgers_evolve(DGField1D f, long n_steps, double tau, const CharSolverConfig& cfg,
                         SldgStats* stats = nullptr);

/// One row per (order, cells); a rejected step gives a failed row.
std::vector<RunRecord> run_burgers_convergence(const BurgersConvergenceConfig& cfg);

struct IterationStudyConfig {
  InitialCondition ic;
  int order = 4;
  int cells = 512;
  std::vector<CharMethod> methods{CharMethod::FixedPoint, CharMethod::Secant,
                                  CharMethod::Newton};
  std::vector<int> iterations{1, 2, 3, 4, 5, 6, 8, 10};
  std::vector<double> taus{1e-2};
  double t_final = 0.8;
  int ref_iterations = 50;
};

/// Rows per (method, iterations, tau): inf-norm distance to the secant run
/// with ref_iterations at the same tau.
std::vector<RunRecord> run_iteration_study(const IterationStudyConfig& cfg);

std::string method_name(CharMethod m);
/// "fixed" | "fixed-point" | "secant" | "newton"; throws std::invalid_argument.
CharMethod parse_method(const std::string& s);

// ---------------------------------------------------------------- KP

struct KPRunConfig {
  KPParams params;
  InitialCondition ic = InitialCondition::from_name("schwartzian");
  Scheme scheme = Scheme::Strang;
  int order = 4;
  int n_x = 128;
  int n_y = 128;
  double Lx = 10.0 * 3.14159265358979323846;
  double Ly = 10.0 * 3.14159265358979323846;
  /// dG degrees of freedom per equidistant point.
  double rho = 1.0;
  double tau = 1e-3;
  double t_final = 0.1;
  CharSolverConfig solver{CharMethod::Secant, 5, 0.0};
  bool fuse_half_steps = true;
};

SchemeConfig make_scheme_config(const KPRunConfig& cfg);

struct KPRunResult {
  GridField2D field;
  RunRecord record;
};

/// Single run; observers see the evolving field. Failures (rejected step,
/// divergence) are reported in record.ok / record.note, not thrown.
KPRunResult run_kp(const KPRunConfig& cfg, const std::vector<Observer>& observers = {},
                   long observe_stride = 0);

/// Inf-norm difference of two equidistant fields on the same domain whose
/// sizes divide each other; the finer one is subsampled.
double field_distance(const GridField2D& a, const GridField2D& b);

struct KPConvergenceResult {
  std::vector<RunRecord> records;  // one per tau, error vs the reference
  GridField2D reference;
  RunRecord reference_record;
};

/// Time self-convergence at fixed space resolution against a tau_ref run.
KPConvergenceResult run_kp_time_convergence(const KPRunConfig& base,
                                            const std::vector<double>& taus, double tau_ref);

/// Space convergence at fixed tau: each n_x (with n_y = n_x) against the run
/// at ref_n (which must be a multiple of every n_x).
std::vector<RunRecord> run_kp_space_convergence(const KPRunConfig& base,
                                                const std::vector<int>& n_list, int ref_n);

/// Observed orders log2(e_k / e_{k+1}) of successive errors.
std::vector<double> observed_orders(const std::vector<double>& errors);

// ---------------------------------------------------------------- soliton

struct SolitonStudyConfig {
  std::vector<int> orders{2, 3, 4, 5};
  double tau = 1e-2;
  double t_final = 50.0;
  int dof = 512;
  int n_y = 8;
  double Lx = 10.0 * 3.14159265358979323846;
  double Ly = 10.0 * 3.14159265358979323846;
  double epsilon = 1.0;
  long record_stride = 100;
  CharSolverConfig solver{CharMethod::Secant, 5, 0.0};
};

struct SolitonSample {
  int order = 0;
  double t = 0.0;
  double amplitude = 0.0;
};

struct SolitonStudyResult {
  std::vector<SolitonSample> samples;
  std::vector<RunRecord> records;  // error = |amplitude - c| at t_final
};

/// Equidistant points for a soliton run of the given order: o * cells with
/// cells = round(dof / o), lowered by one cell if that count is odd.
int soliton_points(int dof, int order);

/// Maximum of the trigonometric interpolant of the row holding max |u|,
/// located by golden-section search next to the grid maximum.
double peak_amplitude(const GridField2D& u);

SolitonStudyResult run_soliton_study(const SolitonStudyConfig& cfg);

// ---------------------------------------------------------------- cost study

struct CostStudyConfig {
  KPRunConfig base;
  std::vector<int> strang_n{64, 128, 256, 512};
  std::vector<int> exp2_n{64, 128, 256, 512};
  std::vector<double> taus{1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2.5e-3};
  /// Fine exp2 reference; ref_n must be a multiple of every n.
  int ref_n = 1024;
  double ref_tau = 2.5e-4;
  std::vector<double> tolerances{1e-1, 1e-2};
};

struct CostStudyResult {
  std::vector<RunRecord> records;
  std::vector<CostAccuracyPoint> points;
};

/// Runs both schemes over the (n, tau) grid; errors against the fine exp2
/// reference. For a record at (n, tau) the space error estimate is the error
/// of the smallest-tau run at that n and the time error estimate is its
/// distance to that run.
CostStudyResult run_cost_study(const CostStudyConfig& cfg);

// ---------------------------------------------------------------- self test

struct SeedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Built-in oracle self-tests (quadrature, Bessel series against the
/// characteristic solution, propagator dispersion, cost identities).
std::vector<SeedCheck> run_seed_check();

}  // namespace kpsldg
