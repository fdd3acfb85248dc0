#pragma once

#include <vector>

#include "kpsldg/dg_core.hpp"
#include "kpsldg/errors.hpp"

namespace kpsldg {

enum class CharMethod { FixedPoint, Secant, Newton };

/// How foot points alpha = x - tau u(alpha) are solved.
///
/// `tol` is an early-exit threshold on |alpha^(k+1) - alpha^(k)|; zero runs
/// exactly `max_iter` iterations.
struct CharSolverConfig {
  CharMethod method = CharMethod::Secant;
  int max_iter = 10;
  double tol = 0.0;

  void validate() const;
};

/// Forward image [a_i, b_i] of cell i under x -> x + tau * u~(x).
struct CellImage {
  int cell = 0;
  double a = 0.0;
  double b = 0.0;
};

struct TraceResult {
  double alpha = 0.0;
  int iterations = 0;
};

/// Counters collected during one sLdG step.
struct SldgStats {
  long traces = 0;
  long iterations = 0;
  int max_cells_per_image = 0;
};

/// Forward images of all cells from the averaged interface values.
/// Throws StepRejected if some image has non-positive width.
std::vector<CellImage> predict_interfaces(const DGField1D& f, double tau);

/// Solves alpha = x - tau u(alpha) with u the periodic dG reconstruction of f.
/// alpha is returned unwrapped, i.e. in the same periodic copy as x.
TraceResult trace_back(double x, const DGField1D& f, double tau, const CharSolverConfig& cfg);

/// One semi-Lagrangian dG step of u_t + u u_x = 0 over tau. Nonlinearity
/// coefficients (the KP factor 6) are absorbed into tau by the caller.
DGField1D sldg_step(const DGField1D& f, double tau, const CharSolverConfig& cfg,
                    SldgStats* stats = nullptr);

/// Row-wise sldg_step; a StepRejected error carries the failing row index.
DGField2D sldg_step_rows(const DGField2D& f, double tau, const CharSolverConfig& cfg,
                         SldgStats* stats = nullptr);

/// Bessel function of the first kind J_k(z), 0 <= k <= 300, |z| <= 300.
double bessel_j(int k, double z);

/// Truncated series solution of Burgers' equation with u(0,x) = sin x,
/// valid for 0 < t < 1 (before the shock forms).
double burgers_sine_exact(double t, double x, int n_terms);

}  // namespace kpsldg
