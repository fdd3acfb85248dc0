#pragma once

#include <string>

#include "kpsldg/dg_core.hpp"
#include "kpsldg/spectral_kp.hpp"

namespace kpsldg {

enum class ICKind { Sine, Sech, Lorentzian, Schwartzian, Soliton };

/// Named initial value. `L` is the half width of the canonical domain of the
/// 1D data (sine lives on [0, 2 pi] and ignores it); `epsilon` and `c` are
/// the soliton parameters, `t0` its time shift.
struct InitialCondition {
  ICKind kind = ICKind::Sine;
  double L = 20.0;
  double epsilon = 1.0;
  double c = 2.0;
  double t0 = 0.0;

  /// Throws std::invalid_argument on an unknown name.
  static InitialCondition from_name(const std::string& name);
  std::string name() const;
  bool two_dimensional() const;

  double operator()(double x) const;
  double operator()(double x, double y) const;
};

/// Soliton shape parameters a = eps sqrt(c/2), b = 2 c eps^2.
double soliton_a(double epsilon, double c = 2.0);
double soliton_b(double epsilon, double c = 2.0);

/// Schwartzian datum -d/dx sech^2(r), r = |(x,y)|.
double schwartzian(double x, double y);

DGField1D make_initial(const InitialCondition& ic, const DGGrid& grid);
GridField2D make_initial(const InitialCondition& ic, int n_x, int n_y, double Lx, double Ly);

}  // namespace kpsldg
