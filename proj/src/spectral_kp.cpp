#include "kpsldg/spectral_kp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace kpsldg {

void KPParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("KPParams: epsilon must be > 0");
  if (lambda != 1 && lambda != -1) throw std::invalid_argument("KPParams: lambda must be +-1");
  if (!(delta > 0.0)) throw std::invalid_argument("KPParams: delta must be > 0");
}

GridField2D::GridField2D(int nx, int ny, double lx, double ly)
    : n_x(nx), n_y(ny), Lx(lx), Ly(ly) {
  if (n_x < 1 || n_y < 1) throw std::invalid_argument("GridField2D: empty grid");
  if (!(Lx > 0.0) || !(Ly > 0.0)) throw std::invalid_argument("GridField2D: L must be > 0");
  values.assign(static_cast<std::size_t>(n_x) * n_y, 0.0);
}

SpectralField2D::SpectralField2D(int nx, int ny, double lx, double ly)
    : n_x(nx), n_y(ny), Lx(lx), Ly(ly) {
  coeffs.assign(static_cast<std::size_t>(n_kx()) * n_y, cplx{});
}

double max_abs(const GridField2D& u) {
  double m = 0.0;
  for (double v : u.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const GridField2D& u, const GridField2D& v) {
  if (u.n_x != v.n_x || u.n_y != v.n_y)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k)
    m = std::max(m, std::abs(u.values[k] - v.values[k]));
  return m;
}

double grid_mass(const GridField2D& u) {
  double s = 0.0;
  for (double v : u.values) s += v;
  return s * u.dx() * u.dy();
}

std::vector<double> wavenumbers(int n, double L) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("wavenumbers: n must be even and >= 2, got " + std::to_string(n));
  std::vector<double> k(n);
  const double base = std::numbers::pi / L;
  for (int m = 0; m < n; ++m) k[m] = base * (m < n / 2 ? m : m - n);
  return k;
}

cplx kp_symbol(double kx, double ky, const KPParams& p) {
  // -i lambda ky^2 / (kx + i lambda delta) split into real and imaginary parts.
  const double den = kx * kx + p.delta * p.delta;
  const double ky2 = ky * ky;
  const double re = -p.delta * ky2 / den;
  const double im = p.epsilon * p.epsilon * kx * kx * kx - p.lambda * ky2 * kx / den;
  return {re, im};
}

namespace {

cplx expm1_complex(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

cplx phi_function(cplx z, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("phi_function: order must be 1 or 2");
  if (std::abs(z) < 0.1) {
    // sum_n z^n / (n + order)!, Horner from the tail
    constexpr int terms = 16;
    cplx acc = 0.0;
    for (int n = terms - 1; n >= 0; --n) acc = acc * z / static_cast<double>(n + order + 1) + 1.0;
    return order == 1 ? acc : acc / 2.0;
  }
  const cplx em1 = expm1_complex(z);
  if (order == 1) return em1 / z;
  return (em1 - z) / (z * z);
}

FourierTransform2D::FourierTransform2D(int n_x, int n_y) : n_x_(n_x), n_y_(n_y) {
  if (n_x < 2 || n_y < 1) throw std::invalid_argument("FourierTransform2D: bad size");
  const std::size_t nr = static_cast<std::size_t>(n_x) * n_y;
  const std::size_t nc = static_cast<std::size_t>(n_x / 2 + 1) * n_y;
  real_ = fftw_alloc_real(nr);
  auto* spec = fftw_alloc_complex(nc);
  spec_ = spec;
  // FFTW_ESTIMATE keeps plans (and results) reproducible between runs.
  plan_fwd_ = fftw_plan_dft_r2c_2d(n_y, n_x, real_, spec, FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_2d(n_y, n_x, spec, real_, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("FourierTransform2D: planning failed");
}

FourierTransform2D::~FourierTransform2D() {
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_inv_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(real_);
  fftw_free(spec_);
}

void FourierTransform2D::forward(std::span<const double> in, std::span<cplx> out) {
  std::memcpy(real_, in.data(), in.size_bytes());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(static_cast<void*>(out.data()), spec_, out.size_bytes());
}

void FourierTransform2D::inverse(std::span<const cplx> in, std::span<double> out) {
  std::memcpy(spec_, in.data(), in.size_bytes());
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / (static_cast<double>(n_x_) * n_y_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = real_[k] * scale;
}

SpectralField2D forward_transform(const GridField2D& u) {
  FourierTransform2D fft(u.n_x, u.n_y);
  SpectralField2D s(u.n_x, u.n_y, u.Lx, u.Ly);
  fft.forward(u.values, s.coeffs);
  return s;
}

GridField2D inverse_transform(const SpectralField2D& s) {
  FourierTransform2D fft(s.n_x, s.n_y);
  GridField2D u(s.n_x, s.n_y, s.Lx, s.Ly);
  fft.inverse(s.coeffs, u.values);
  return u;
}

PropagatorTables PropagatorTables::build(int n_x, int n_y, double Lx, double Ly, double tau,
                                         const KPParams& p, bool with_phi) {
  p.validate();
  const auto kx = wavenumbers(n_x, Lx);
  const auto ky = n_y >= 2 ? wavenumbers(n_y, Ly) : std::vector<double>{0.0};
  const int nkx = n_x / 2 + 1;
  PropagatorTables t;
  t.tau = tau;
  const std::size_t size = static_cast<std::size_t>(nkx) * n_y;
  t.phi0.resize(size);
  if (with_phi) {
    t.phi1.resize(size);
    t.phi2.resize(size);
  }
  for (int iy = 0; iy < n_y; ++iy) {
    for (int ix = 0; ix < nkx; ++ix) {
      const cplx sigma = kp_symbol(kx[ix], ky[iy], p);
      // Damping part kept non-positive for either sign of tau. The Nyquist
      // column has no odd derivatives on the grid, so it only keeps the damping.
      const bool nyquist = (ix == n_x / 2);
      const cplx z{-std::abs(tau * sigma.real()), nyquist ? 0.0 : tau * sigma.imag()};
      const std::size_t k = static_cast<std::size_t>(iy) * nkx + ix;
      t.phi0[k] = std::exp(z);
      if (with_phi) {
        t.phi1[k] = tau * phi_function(z, 1);
        t.phi2[k] = tau * phi_function(z, 2);
      }
    }
  }
  return t;
}

std::vector<cplx> derivative_multiplier(int n_x, int n_y, double Lx) {
  const auto kx = wavenumbers(n_x, Lx);
  const int nkx = n_x / 2 + 1;
  std::vector<cplx> m(static_cast<std::size_t>(nkx) * n_y);
  for (int iy = 0; iy < n_y; ++iy)
    for (int ix = 0; ix < nkx; ++ix)
      m[static_cast<std::size_t>(iy) * nkx + ix] =
          ix == n_x / 2 ? cplx{} : cplx{0.0, kx[ix]};
  return m;
}

void multiply(std::span<cplx> s, std::span<const cplx> m) {
  for (std::size_t k = 0; k < s.size(); ++k) s[k] *= m[k];
}

GridField2D apply_propagator(const GridField2D& u, double tau, const KPParams& p) {
  if (!std::isfinite(tau)) throw std::invalid_argument("apply_propagator: non-finite tau");
  for (double v : u.values)
    if (!std::isfinite(v)) throw std::invalid_argument("apply_propagator: non-finite input");
  FourierTransform2D fft(u.n_x, u.n_y);
  const auto tables = PropagatorTables::build(u.n_x, u.n_y, u.Lx, u.Ly, tau, p, false);
  std::vector<cplx> spec(tables.phi0.size());
  fft.forward(u.values, spec);
  multiply(spec, tables.phi0);
  GridField2D out(u.n_x, u.n_y, u.Lx, u.Ly);
  fft.inverse(spec, out.values);
  return out;
}

namespace {

// Solves M X = I for the o x o matrix M (row-major) with partial pivoting.
std::vector<double> invert(std::vector<double> m, int o) {
  std::vector<double> inv(static_cast<std::size_t>(o) * o, 0.0);
  for (int i = 0; i < o; ++i) inv[i * o + i] = 1.0;
  for (int c = 0; c < o; ++c) {
    int piv = c;
    for (int r = c + 1; r < o; ++r)
      if (std::abs(m[r * o + c]) > std::abs(m[piv * o + c])) piv = r;
    if (m[piv * o + c] == 0.0) throw std::runtime_error("GridTransfer: singular cell matrix");
    for (int k = 0; k < o; ++k) {
      std::swap(m[c * o + k], m[piv * o + k]);
      std::swap(inv[c * o + k], inv[piv * o + k]);
    }
    const double d = m[c * o + c];
    for (int k = 0; k < o; ++k) {
      m[c * o + k] /= d;
      inv[c * o + k] /= d;
    }
    for (int r = 0; r < o; ++r) {
      if (r == c) continue;
      const double f = m[r * o + c];
      if (f == 0.0) continue;
      for (int k = 0; k < o; ++k) {
        m[r * o + k] -= f * m[c * o + k];
        inv[r * o + k] -= f * inv[c * o + k];
      }
    }
  }
  return inv;
}

}  // namespace

GridTransfer::GridTransfer(DGGrid grid, int n_x, bool cell_exact)
    : grid_(std::move(grid)), n_x_(n_x), width_(grid_.order() + 2) {
  const double Lx = 0.5 * grid_.length();
  if (n_x_ < width_)
    throw std::invalid_argument("GridTransfer: n_x must be >= o+2 (n_x=" + std::to_string(n_x_) +
                                ")");
  const int o = grid_.order();
  const double dx = 2.0 * Lx / n_x_;
  // The dG grid may start up to one sample spacing left of -Lx.
  const double shift = (-Lx - grid_.a()) / dx;
  if (shift < -1e-12 || shift >= 1.0)
    throw std::invalid_argument("GridTransfer: dG grid must start in (-Lx - dx, -Lx]");
  aligned_ = cell_exact && n_x_ == grid_.n_cells() * o;

  eq_cell_.resize(n_x_);
  eq_basis_.resize(static_cast<std::size_t>(n_x_) * o);
  for (int p = 0; p < n_x_; ++p) {
    int i;
    double s;
    if (aligned_) {
      i = p / o;
      s = (static_cast<double>(p % o) + std::max(shift, 0.0)) / o;
    } else {
      std::tie(i, s) = grid_.locate(-Lx + p * dx);
    }
    eq_cell_[p] = i;
    grid_.reference().basis_values(
        s, std::span<double>(eq_basis_.data() + static_cast<std::size_t>(p) * o, o));
  }

  const std::size_t nodes = grid_.size();
  if (aligned_) {
    // o samples per cell: invert the cell's evaluation matrix, so the
    // equidistant -> dG transfer is the exact inverse of dG -> equidistant.
    width_ = o;
    const auto inv = invert(std::vector<double>(eq_basis_.begin(),
                                                eq_basis_.begin() + static_cast<long>(o) * o),
                            o);
    dg_index_.resize(nodes * o);
    dg_weight_.resize(nodes * o);
    for (int i = 0; i < grid_.n_cells(); ++i)
      for (int j = 0; j < o; ++j)
        for (int q = 0; q < o; ++q) {
          const std::size_t k = (static_cast<std::size_t>(i) * o + j) * o + q;
          dg_index_[k] = i * o + q;
          dg_weight_[k] = inv[j * o + q];
        }
    return;
  }

  // Barycentric weights of equispaced nodes: (-1)^j binom(w-1, j).
  std::vector<double> bary(width_);
  double binom = 1.0;
  for (int j = 0; j < width_; ++j) {
    bary[j] = (j % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (width_ - 1 - j) / (j + 1);
  }

  dg_index_.resize(nodes * width_);
  dg_weight_.resize(nodes * width_);
  for (int i = 0; i < grid_.n_cells(); ++i) {
    for (int j = 0; j < o; ++j) {
      const std::size_t node = static_cast<std::size_t>(i) * o + j;
      const double s = (grid_.node(i, j) + Lx) / dx;
      const long p0 = static_cast<long>(std::floor(s - 0.5 * (width_ - 1) + 0.5));
      int* idx = dg_index_.data() + node * width_;
      double* w = dg_weight_.data() + node * width_;
      double den = 0.0;
      int exact = -1;
      for (int q = 0; q < width_; ++q) {
        const long p = p0 + q;
        idx[q] = static_cast<int>(((p % n_x_) + n_x_) % n_x_);
        const double d = s - static_cast<double>(p);
        if (d == 0.0) exact = q;
        w[q] = exact == q ? 0.0 : bary[q] / d;
        den += w[q];
      }
      if (exact >= 0) {
        std::fill(w, w + width_, 0.0);
        w[exact] = 1.0;
      } else {
        for (int q = 0; q < width_; ++q) w[q] /= den;
      }
    }
  }
}

void GridTransfer::to_equidistant(const DGField1D& f, std::span<double> out) const {
  const int o = grid_.order();
  const auto c = f.coeffs();
  for (int p = 0; p < n_x_; ++p) {
    const double* b = eq_basis_.data() + static_cast<std::size_t>(p) * o;
    const double* u = c.data() + static_cast<std::size_t>(eq_cell_[p]) * o;
    double v = 0.0;
    for (int j = 0; j < o; ++j) v += b[j] * u[j];
    out[p] = v;
  }
}

void GridTransfer::to_dg(std::span<const double> in, DGField1D& f) const {
  auto c = f.coeffs();
  for (std::size_t node = 0; node < c.size(); ++node) {
    const int* idx = dg_index_.data() + node * width_;
    const double* w = dg_weight_.data() + node * width_;
    double v = 0.0;
    for (int q = 0; q < width_; ++q) v += w[q] * in[idx[q]];
    c[node] = v;
  }
}

GridField2D GridTransfer::to_equidistant(const DGField2D& f) const {
  const double Ly = 0.5 * (f.y_hi - f.y_lo);
  GridField2D u(n_x_, f.n_y, 0.5 * grid_.length(), Ly);
  for (int r = 0; r < f.n_y; ++r) to_equidistant(f.rows[r], u.row(r));
  return u;
}

DGField2D GridTransfer::to_dg(const GridField2D& u) const {
  if (u.n_x != n_x_) throw std::invalid_argument("GridTransfer::to_dg: n_x mismatch");
  DGField2D f(grid_, u.n_y, -u.Ly, u.Ly);
  for (int r = 0; r < u.n_y; ++r) to_dg(u.row(r), f.rows[r]);
  return f;
}

GridField2D dg_to_equidistant(const DGField2D& f, int n_x) {
  if (n_x < 2) throw std::invalid_argument("dg_to_equidistant: n_x must be >= 2");
  // Evaluation only; build the cheap half of a transfer without the o+2 check.
  const double Lx = 0.5 * f.grid_x.length();
  if (std::abs(f.grid_x.a() + Lx) > 1e-12 * Lx)
    throw std::invalid_argument("dg_to_equidistant: dG grid must span [-Lx, Lx)");
  GridField2D u(n_x, f.n_y, Lx, 0.5 * (f.y_hi - f.y_lo));
  const double dx = u.dx();
  for (int r = 0; r < f.n_y; ++r)
    for (int p = 0; p < n_x; ++p) u.at(p, r) = eval_dg(f.rows[r], -Lx + p * dx);
  return u;
}

DGField2D equidistant_to_dg(const GridField2D& u, const DGGrid& grid) {
  if (std::abs(grid.length() - 2.0 * u.Lx) > 1e-12 * u.Lx ||
      std::abs(grid.a() + u.Lx) > 1e-12 * u.Lx)
    throw std::invalid_argument("equidistant_to_dg: dG grid must span [-Lx, Lx)");
  return GridTransfer(grid, u.n_x).to_dg(u);
}

}  // namespace kpsldg
