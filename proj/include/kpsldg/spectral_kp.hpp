#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kpsldg/dg_core.hpp"

namespace kpsldg {

using cplx = std::complex<double>;

/// Parameters of u_t + 6 u u_x + eps^2 u_xxx + lambda d_x^{-1} u_yy = 0.
/// KP I has lambda = -1, KP II lambda = +1.
struct KPParams {
  double epsilon = 0.1;
  int lambda = 1;
  double delta = 0x1p-52;

  void validate() const;
};

/// Equidistant samples on [-Lx,Lx) x [-Ly,Ly), row-major with x fastest:
/// values[iy * n_x + ix] = u(-Lx + ix dx, -Ly + iy dy).
struct GridField2D {
  GridField2D(int n_x, int n_y, double Lx, double Ly);

  int n_x;
  int n_y;
  double Lx;
  double Ly;
  std::vector<double> values;

  double dx() const { return 2.0 * Lx / n_x; }
  double dy() const { return 2.0 * Ly / n_y; }
  double x(int ix) const { return -Lx + ix * dx(); }
  double y(int iy) const { return -Ly + iy * dy(); }
  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * n_x + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * n_x + ix]; }
  std::span<double> row(int iy) {
    return std::span<double>(values).subspan(static_cast<std::size_t>(iy) * n_x, n_x);
  }
  std::span<const double> row(int iy) const {
    return std::span<const double>(values).subspan(static_cast<std::size_t>(iy) * n_x, n_x);
  }
};

/// Half-spectrum Fourier coefficients of a real field: rows over k_y (DFT
/// order), columns over k_x = 0..n_x/2. Forward transform unnormalised,
/// inverse scaled by 1/(n_x n_y).
struct SpectralField2D {
  SpectralField2D(int n_x, int n_y, double Lx, double Ly);

  int n_x;
  int n_y;
  double Lx;
  double Ly;
  std::vector<cplx> coeffs;

  int n_kx() const { return n_x / 2 + 1; }
  cplx& at(int ikx, int iky) { return coeffs[static_cast<std::size_t>(iky) * n_kx() + ikx]; }
  cplx at(int ikx, int iky) const {
    return coeffs[static_cast<std::size_t>(iky) * n_kx() + ikx];
  }
};

template <typename F>
GridField2D sample(int n_x, int n_y, double Lx, double Ly, F&& g) {
  GridField2D u(n_x, n_y, Lx, Ly);
  for (int iy = 0; iy < n_y; ++iy)
    for (int ix = 0; ix < n_x; ++ix) u.at(ix, iy) = g(u.x(ix), u.y(iy));
  return u;
}

double max_abs(const GridField2D& u);
double max_abs_diff(const GridField2D& u, const GridField2D& v);
double grid_mass(const GridField2D& u);

/// Periodic wavenumbers pi m / L in DFT order (0, 1, ..., n/2-1, -n/2, ..., -1).
std::vector<double> wavenumbers(int n, double L);

/// Fourier symbol of A = -eps^2 d_x^3 - lambda d_x^{-1} d_y^2 with the
/// regularised inverse derivative -i / (k_x + i lambda delta).
cplx kp_symbol(double kx, double ky, const KPParams& p);

/// phi_1(z) = (e^z - 1)/z and phi_2(z) = (e^z - 1 - z)/z^2.
cplx phi_function(cplx z, int order);

/// Real 2D transform pair backed by FFTW plans; not copyable.
class FourierTransform2D {
 public:
  FourierTransform2D(int n_x, int n_y);
  ~FourierTransform2D();
  FourierTransform2D(const FourierTransform2D&) = delete;
  FourierTransform2D& operator=(const FourierTransform2D&) = delete;

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }

  void forward(std::span<const double> in, std::span<cplx> out);
  /// Includes the 1/(n_x n_y) normalisation.
  void inverse(std::span<const cplx> in, std::span<double> out);

 private:
  int n_x_;
  int n_y_;
  double* real_ = nullptr;
  void* spec_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_inv_ = nullptr;
};

SpectralField2D forward_transform(const GridField2D& u);
GridField2D inverse_transform(const SpectralField2D& s);

/// Precomputed multipliers over the half spectrum: Phi0 = e^{tau sigma},
/// Phi1 = tau phi_1(tau sigma), Phi2 = tau phi_2(tau sigma).
///
/// In the Nyquist column k_x = -n_x/2 the dispersive (imaginary) part of the
/// symbol is dropped: odd x-derivatives of that mode vanish on the grid. This
/// keeps the multipliers real there and the group property exact.
/// For tau < 0 the damping from the regularisation is kept (|Phi0| <= 1), so
/// the k_x = 0, k_y != 0 modes stay annihilated in both time directions.
struct PropagatorTables {
  double tau = 0.0;
  std::vector<cplx> phi0;
  std::vector<cplx> phi1;
  std::vector<cplx> phi2;

  static PropagatorTables build(int n_x, int n_y, double Lx, double Ly, double tau,
                                const KPParams& p, bool with_phi);
};

/// i k_x multipliers over the half spectrum (zero in the Nyquist column).
std::vector<cplx> derivative_multiplier(int n_x, int n_y, double Lx);

void multiply(std::span<cplx> s, std::span<const cplx> m);

/// e^{tau A} u via forward transform, multiplication, inverse transform.
GridField2D apply_propagator(const GridField2D& u, double tau, const KPParams& p);

/// Reusable transfers between the equidistant x grid and a dG grid on the same
/// domain [-Lx, Lx). dG -> equidistant evaluates the cell polynomials exactly.
/// equidistant -> dG interpolates the o+2 nearest equidistant samples
/// (periodic wrap) with barycentric weights. With `cell_exact` on an aligned
/// grid (n_x = cells * o) each cell's own o samples are interpolated instead,
/// which makes the two transfers exact inverses of each other.
///
/// The dG grid may start anywhere in (-Lx - dx, -Lx].
class GridTransfer {
 public:
  GridTransfer(DGGrid grid, int n_x, bool cell_exact = false);

  const DGGrid& grid() const { return grid_; }
  int n_x() const { return n_x_; }
  bool aligned() const { return aligned_; }

  void to_equidistant(const DGField1D& f, std::span<double> out) const;
  void to_dg(std::span<const double> in, DGField1D& f) const;

  GridField2D to_equidistant(const DGField2D& f) const;
  DGField2D to_dg(const GridField2D& u) const;

 private:
  DGGrid grid_;
  int n_x_;
  int width_;
  bool aligned_ = false;
  // dG -> equidistant: cell index and o basis values per equidistant point
  std::vector<int> eq_cell_;
  std::vector<double> eq_basis_;
  // equidistant -> dG: width_ wrapped indices and weights per dG node
  std::vector<int> dg_index_;
  std::vector<double> dg_weight_;
};

GridField2D dg_to_equidistant(const DGField2D& f, int n_x);
DGField2D equidistant_to_dg(const GridField2D& u, const DGGrid& grid);

}  // namespace kpsldg
