#include "kpsldg/initial_conditions.hpp"

#include <cmath>
#include <stdexcept>

namespace kpsldg {

InitialCondition InitialCondition::from_name(const std::string& name) {
  InitialCondition ic;
  if (name == "sine")
    ic.kind = ICKind::Sine;
  else if (name == "sech")
    ic.kind = ICKind::Sech;
  else if (name == "lorentzian")
    ic.kind = ICKind::Lorentzian;
  else if (name == "schwartzian")
    ic.kind = ICKind::Schwartzian;
  else if (name == "soliton")
    ic.kind = ICKind::Soliton;
  else
    throw std::invalid_argument("unknown initial value '" + name + "'");
  return ic;
}

std::string InitialCondition::name() const {
  switch (kind) {
    case ICKind::Sine: return "sine";
    case ICKind::Sech: return "sech";
    case ICKind::Lorentzian: return "lorentzian";
    case ICKind::Schwartzian: return "schwartzian";
    case ICKind::Soliton: return "soliton";
  }
  return "?";
}

bool InitialCondition::two_dimensional() const {
  return kind == ICKind::Schwartzian || kind == ICKind::Soliton;
}

double soliton_a(double epsilon, double c) { return epsilon * std::sqrt(0.5 * c); }
double soliton_b(double epsilon, double c) { return 2.0 * c * epsilon * epsilon; }

double schwartzian(double x, double y) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return 0.0;
  const double s = 1.0 / std::cosh(r);
  return 2.0 * s * s * std::tanh(r) * (x / r);
}

double InitialCondition::operator()(double x) const {
  switch (kind) {
    case ICKind::Sine: return std::sin(x);
    case ICKind::Sech: return 1.0 / std::cosh(x);
    case ICKind::Lorentzian: return 1.0 / (1.0 + x * x);
    case ICKind::Schwartzian: return schwartzian(x, 0.0);
    case ICKind::Soliton: {
      const double s = 1.0 / std::cosh(soliton_a(epsilon, c) * (x - soliton_b(epsilon, c) * t0));
      return c * s * s;
    }
  }
  return 0.0;
}

double InitialCondition::operator()(double x, double y) const {
  if (kind == ICKind::Schwartzian) return schwartzian(x, y);
  return (*this)(x);
}

DGField1D make_initial(const InitialCondition& ic, const DGGrid& grid) {
  return sample(grid, [&](double x) { return ic(x); });
}

GridField2D make_initial(const InitialCondition& ic, int n_x, int n_y, double Lx, double Ly) {
  return sample(n_x, n_y, Lx, Ly, [&](double x, double y) { return ic(x, y); });
}

}  // namespace kpsldg
