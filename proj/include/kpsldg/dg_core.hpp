#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kpsldg {

/// Gauss–Legendre rule on the unit interval [0,1]; the weights sum to one.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// o-point Gauss–Legendre rule mapped from [-1,1] to [0,1], 1 <= o <= 16.
QuadratureRule gauss_legendre_rule(int order);

/// Nodal Lagrange basis on the reference cell [0,1] with Gauss–Legendre nodes.
///
/// Evaluation uses the barycentric (second) form, which stays stable up to
/// order 16 and for mild extrapolation slightly outside [0,1].
class ReferenceCell {
 public:
  explicit ReferenceCell(QuadratureRule rule);

  int order() const { return rule_.order; }
  const QuadratureRule& rule() const { return rule_; }
  std::span<const double> nodes() const { return rule_.nodes; }
  std::span<const double> weights() const { return rule_.weights; }

  /// All o basis values l_j(s).
  void basis_values(double s, std::span<double> out) const;

  /// Value of the interpolant through nodal values u at reference coordinate s.
  double interpolate(std::span<const double> u, double s) const;

  /// Nodal values of the derivative d/ds of the interpolant through u.
  void differentiate(std::span<const double> u, std::span<double> du) const;

  /// Basis values at the cell edges s=0 and s=1.
  std::span<const double> left_values() const { return at_left_; }
  std::span<const double> right_values() const { return at_right_; }

 private:
  QuadratureRule rule_;
  std::vector<double> bary_;
  std::vector<double> at_left_;
  std::vector<double> at_right_;
  std::vector<double> diff_;  // row-major o x o differentiation matrix
};

/// Periodic 1D partition of [a,b) into equal cells, each carrying o
/// Gauss–Legendre nodes. Cells are 0-based: I_i = [a + i h, a + (i+1) h].
class DGGrid {
 public:
  DGGrid(double a, double b, int n_cells, int order);
  DGGrid(double a, double b, int n_cells, QuadratureRule rule);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  int n_cells() const { return n_cells_; }
  int order() const { return ref_->order(); }
  double h() const { return h_; }
  std::size_t size() const { return static_cast<std::size_t>(n_cells_) * order(); }
  const ReferenceCell& reference() const { return *ref_; }
  const QuadratureRule& rule() const { return ref_->rule(); }

  double cell_left(int i) const { return a_ + i * h_; }
  double node(int i, int j) const { return a_ + (i + ref_->nodes()[j]) * h_; }

  /// Wraps x periodically into [a,b).
  double wrap(double x) const;

  /// Cell index and reference coordinate of x after periodic wrapping; a point
  /// on an interface belongs to the cell on its right.
  std::pair<int, double> locate(double x) const;

  bool operator==(const DGGrid& other) const {
    return a_ == other.a_ && b_ == other.b_ && n_cells_ == other.n_cells_ &&
           order() == other.order();
  }

 private:
  double a_;
  double b_;
  int n_cells_;
  double h_;
  std::shared_ptr<const ReferenceCell> ref_;
};

/// Nodal dG coefficients u_ij, stored cell-major (index i * o + j).
class DGField1D {
 public:
  explicit DGField1D(DGGrid grid);
  DGField1D(DGGrid grid, std::vector<double> coeffs);

  const DGGrid& grid() const { return grid_; }
  std::span<double> coeffs() { return coeffs_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> cell(int i) {
    return std::span<double>(coeffs_).subspan(static_cast<std::size_t>(i) * grid_.order(),
                                              grid_.order());
  }
  std::span<const double> cell(int i) const {
    return std::span<const double>(coeffs_).subspan(
        static_cast<std::size_t>(i) * grid_.order(), grid_.order());
  }
  double& at(int i, int j) { return coeffs_[static_cast<std::size_t>(i) * grid_.order() + j]; }
  double at(int i, int j) const {
    return coeffs_[static_cast<std::size_t>(i) * grid_.order() + j];
  }

 private:
  DGGrid grid_;
  std::vector<double> coeffs_;
};

/// Stack of n_y dG rows sharing one x grid; row r sits at y_r = y_lo + r (y_hi - y_lo) / n_y.
struct DGField2D {
  DGField2D(DGGrid grid_x, int n_y, double y_lo, double y_hi);

  DGGrid grid_x;
  int n_y;
  double y_lo;
  double y_hi;
  std::vector<DGField1D> rows;

  double y(int r) const { return y_lo + r * (y_hi - y_lo) / n_y; }
};

/// Samples g at every node of the grid.
template <typename F>
DGField1D sample(const DGGrid& grid, F&& g) {
  DGField1D f(grid);
  for (int i = 0; i < grid.n_cells(); ++i)
    for (int j = 0; j < grid.order(); ++j) f.at(i, j) = g(grid.node(i, j));
  return f;
}

/// Sum_j u_ij l_ij(x) for the cell containing x (right-sided at interfaces).
double eval_dg(const DGField1D& f, double x);

/// In-cell derivative of the dG polynomial at x (right-sided at interfaces).
double eval_dg_derivative(const DGField1D& f, double x);

/// Mean of left and right limits at interface i (x = a + i h); indices wrap.
double interface_average(const DGField1D& f, int i);

/// Integral of the piecewise polynomial, h * sum_ij w_j u_ij.
double mass(const DGField1D& f);
double mass(const DGField2D& f);

double inf_norm_diff(const DGField1D& f, const DGField1D& g);
double inf_norm_diff(const DGField1D& f, const std::function<double(double)>& g);
double inf_norm_diff(const DGField2D& f, const DGField2D& g);
double inf_norm_diff(const DGField2D& f, const std::function<double(double, double)>& g);

}  // namespace kpsldg
