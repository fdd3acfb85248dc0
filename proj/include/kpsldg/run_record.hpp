#pragma once

#include <string>

namespace kpsldg {

/// One completed (or failed) run of a study. Numeric fields that do not apply
/// to a study are left NaN / zero.
struct RunRecord {
  std::string study;
  std::string scheme;  // "strang", "exp2", "sldg"
  int order = 0;
  int n_cells = 0;
  int N_x = 0;  // dG x degrees of freedom (cells * order)
  int n_x = 0;
  int n_y = 0;
  double tau = 0.0;
  long n_steps = 0;
  double t_final = 0.0;
  double error = 0.0;
  /// Separate time / space error estimates used to balance cost curves.
  double time_error = 0.0;
  double space_error = 0.0;
  double wall_time = 0.0;
  long iterations = 0;
  double mass_drift = 0.0;
  bool ok = true;
  std::string note;
};

}  // namespace kpsldg
